#pragma once

// Constant-parameter mean-reverting short-rate model
//
//     dr_t = kappa * (theta - r_t) dt + sigma dW_t
//
// with the closed-form zero-coupon bond price P(t,T) = A(t,T) exp(-B(t,T) r_t),
//
//     B(t,T) = (1 - exp(-kappa (T-t))) / kappa
//     ln A(t,T) = (theta - sigma^2 / (2 kappa^2)) (B(t,T) - (T-t))
//                 - sigma^2 B(t,T)^2 / (4 kappa).

#include <cmath>
#include <stdexcept>

#include "ratecycle/termstructure.hpp"

namespace ratecycle::hw {

struct Params {
    double kappa;  // mean-reversion speed, 1/years
    double theta;  // long-run level, decimal rate
    double sigma;  // volatility of the short rate, absolute

    void validate() const {
        if (!std::isfinite(kappa) || !std::isfinite(theta) || !std::isfinite(sigma))
            throw std::domain_error("model parameters must be finite");
        if (kappa <= 0.0)
            throw std::domain_error("kappa must be positive (closed form is singular at 0)");
        if (sigma < 0.0) throw std::domain_error("sigma must be non-negative");
    }
};

inline double b_factor(const Params& p, double t, double T) {
    p.validate();
    if (!(T >= t)) throw std::domain_error("b_factor requires T >= t");
    return (1.0 - std::exp(-p.kappa * (T - t))) / p.kappa;
}

inline double a_factor(const Params& p, double t, double T) {
    p.validate();
    if (!(T >= t)) throw std::domain_error("a_factor requires T >= t");
    const double tau = T - t;
    const double b = (1.0 - std::exp(-p.kappa * tau)) / p.kappa;
    const double s2 = p.sigma * p.sigma;
    const double ln_a = (p.theta - s2 / (2.0 * p.kappa * p.kappa)) * (b - tau) -
                        s2 * b * b / (4.0 * p.kappa);
    return std::exp(ln_a);
}

inline BondPrice bond_price(const Params& p, double r0, double T) {
    if (!std::isfinite(r0)) throw std::invalid_argument("short rate must be finite");
    const double b = b_factor(p, 0.0, T);
    const double a = a_factor(p, 0.0, T);
    return BondPrice(Tenor(T), a * std::exp(-b * r0));
}

}  // namespace ratecycle::hw
