#pragma once

// Mean-reverting short-rate model with a sinusoidally time-varying
// reversion speed,
//
//     dr_t = (kappa0 + amp * sin(omega t)) * (theta - r_t) dt + sigma dW_t.
//
// The bond-price exponent B(t,T) no longer has an elementary closed form; it
// solves the backward equation
//
//     dB/dt = kappa(t) B - 1,   B(T,T) = 0,
//
// which we integrate two independent ways: a fixed-step fourth-order
// Runge-Kutta march (b_factor_numeric) and the integrating-factor
// representation
//
//     B(t,T) = integral_t^T exp(g(t) - g(s)) ds,
//     g(s)   = kappa0 * s - (amp / omega) * cos(omega s)
//
// evaluated by adaptive Gauss-Kronrod quadrature (b_factor_integral).  The
// two serve as cross-checks on each other; both collapse to the
// constant-kappa closed form when amp == 0.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ratecycle/hw.hpp"

namespace ratecycle::sinhw {

struct Params {
    double kappa0;  // baseline reversion speed, 1/years
    double amp;     // modulation amplitude, 1/years
    double omega;   // angular frequency, radians/year
    double theta;   // long-run level, decimal rate
    double sigma;   // volatility of the short rate, absolute

    void validate() const {
        if (!std::isfinite(kappa0) || !std::isfinite(amp) || !std::isfinite(omega) ||
            !std::isfinite(theta) || !std::isfinite(sigma))
            throw std::domain_error("model parameters must be finite");
        if (omega <= 0.0) throw std::domain_error("omega must be positive");
        if (amp < 0.0) throw std::domain_error("amp must be non-negative");
        if (sigma < 0.0) throw std::domain_error("sigma must be non-negative");
    }

    // Reversion speed spends part of each cycle below zero.
    bool reversion_changes_sign() const { return amp > kappa0; }
};

inline double omega_from_period_years(double period_years) {
    if (!std::isfinite(period_years) || period_years <= 0.0)
        throw std::domain_error("cycle period must be a positive number of years");
    return 2.0 * std::numbers::pi / period_years;
}

inline double kappa_at(const Params& p, double t) {
    return p.kappa0 + p.amp * std::sin(p.omega * t);
}

// Fixed-step classical Runge-Kutta march of dB/ds = kappa(s) B - 1 from
// s = T (where B = 0) backwards to s = t.  The step is shrunk so the span
// divides evenly; `step` caps it.
inline double b_factor_numeric(const Params& p, double t, double T, double step = 0.01) {
    p.validate();
    if (!(T >= t)) throw std::domain_error("b_factor_numeric requires T >= t");
    if (!(step > 0.0) || step > 0.05)
        throw std::domain_error("integration step must lie in (0, 0.05]");
    const double span = T - t;
    if (span == 0.0) return 0.0;

    const long n = std::max(1L, static_cast<long>(std::ceil(span / step - 1e-12)));
    const double h = span / static_cast<double>(n);
    auto f = [&p](double s, double b) { return kappa_at(p, s) * b - 1.0; };

    double b = 0.0;
    for (long i = 0; i < n; ++i) {
        const double s = T - static_cast<double>(i) * h;
        const double k1 = f(s, b);
        const double k2 = f(s - 0.5 * h, b - 0.5 * h * k1);
        const double k3 = f(s - 0.5 * h, b - 0.5 * h * k2);
        const double k4 = f(s - h, b - h * k3);
        b -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return b;
}

// Integrating-factor form evaluated by adaptive quadrature.  The exponent is
// kept as g(t) - g(s) inside the integrand so nothing large is exponentiated.
inline double b_factor_integral(const Params& p, double t, double T) {
    p.validate();
    if (!(T >= t)) throw std::domain_error("b_factor_integral requires T >= t");
    if (T == t) return 0.0;

    auto g = [&p](double s) {
        double v = p.kappa0 * s;
        if (p.amp != 0.0) v -= (p.amp / p.omega) * std::cos(p.omega * s);
        return v;
    };
    const double g_t = g(t);
    auto integrand = [&](double s) { return std::exp(g_t - g(s)); };

    double error = 0.0;
    double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, t, T, 12, 1e-13, &error);
    return value;
}

}  // namespace ratecycle::sinhw
