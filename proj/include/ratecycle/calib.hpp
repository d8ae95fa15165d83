#pragma once

// Calibration of both short-rate models to an observed zero curve.
//
// The objective is the sum of squared differences between model and observed
// zero-coupon prices across the curve's tenors, evaluated at box-clamped
// parameters plus a quadratic penalty of 1e6 * (distance outside the box)^2
// per coordinate, so the simplex search is steered back into bounds without
// ever pricing at invalid parameters.  Constant-kappa model prices come from
// the closed form; sinusoidal-kappa prices come from Monte Carlo with one
// fixed seed for the whole optimization (common random numbers), memoized in
// a shared PriceCache.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ratecycle/hw.hpp"
#include "ratecycle/mc.hpp"
#include "ratecycle/nelder_mead.hpp"
#include "ratecycle/sinhw.hpp"
#include "ratecycle/termstructure.hpp"

namespace ratecycle::calib {

// Box bounds in parameter-vector order: (kappa, theta, sigma) for the
// constant model, (kappa0, amp, omega, theta, sigma) for the sinusoidal one.
struct ParamBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    void validate() const {
        if (lower.size() != upper.size() || lower.empty())
            throw std::invalid_argument("bounds vectors must be non-empty and equal length");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] <= upper[i]))
                throw std::invalid_argument("each lower bound must not exceed its upper bound");
    }

    static ParamBounds hw_default() {
        return {{0.01, 0.001, 0.001}, {5.0, 0.2, 0.05}};
    }

    // omega is effectively unconstrained; penalties apply only far outside
    // any plausible cycle frequency.
    static ParamBounds sin_hw_default() {
        return {{0.01, 0.0, 1e-6, 0.001, 0.001}, {5.0, 1.0, 1000.0, 0.2, 0.05}};
    }
};

inline double clamp_to(const ParamBounds& b, std::size_t i, double v) {
    return std::min(std::max(v, b.lower[i]), b.upper[i]);
}

inline double objective(mc::ModelKind kind, const std::vector<double>& params,
                        const YieldCurve& curve, const mc::SimConfig& cfg,
                        mc::PriceCache& cache,
                        const ParamBounds* bounds_override = nullptr) {
    const std::size_t expected = kind == mc::ModelKind::Hw ? 3 : 5;
    if (params.size() != expected)
        throw std::invalid_argument("parameter vector length does not match model kind");
    ParamBounds bounds = bounds_override
                             ? *bounds_override
                             : (kind == mc::ModelKind::Hw ? ParamBounds::hw_default()
                                                          : ParamBounds::sin_hw_default());
    bounds.validate();
    if (bounds.lower.size() != expected)
        throw std::invalid_argument("bounds length does not match model kind");

    double penalty = 0.0;
    std::vector<double> clamped(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        if (!std::isfinite(params[i])) return 1e12;  // steer the simplex away
        clamped[i] = clamp_to(bounds, i, params[i]);
        const double d = params[i] - clamped[i];
        penalty += 1e6 * d * d;
    }

    double sse = 0.0;
    if (kind == mc::ModelKind::Hw) {
        const hw::Params p{clamped[0], clamped[1], clamped[2]};
        for (const auto& pt : curve.points()) {
            const double model = hw::bond_price(p, cfg.r0, pt.tenor.years).price;
            const double obs = std::exp(-pt.tenor.years * pt.yield);
            sse += (model - obs) * (model - obs);
        }
    } else {
        const sinhw::Params p{clamped[0], clamped[1], clamped[2], clamped[3], clamped[4]};
        for (const auto& pt : curve.points()) {
            const double model = mc::mc_bond_price(p, cfg, pt.tenor.years, &cache).price;
            const double obs = std::exp(-pt.tenor.years * pt.yield);
            sse += (model - obs) * (model - obs);
        }
    }
    return sse + penalty;
}

struct TenorFit {
    double tenor_years;
    double observed_yield;   // decimal
    double fitted_yield;     // decimal
    double yield_error;      // observed - fitted, decimal
    double observed_price;
    double model_price;
};

// Root-mean-square of the per-tenor yield errors, in decimal units.
inline double rmse_yield(const std::vector<TenorFit>& fits) {
    if (fits.empty()) throw std::invalid_argument("no tenor fits to aggregate");
    double s = 0.0;
    for (const auto& f : fits) s += f.yield_error * f.yield_error;
    return std::sqrt(s / static_cast<double>(fits.size()));
}

struct CalibrationResult {
    mc::ModelKind kind;
    std::variant<hw::Params, sinhw::Params> params;
    double objective = 0.0;
    std::vector<TenorFit> per_tenor;
    double rmse = 0.0;  // decimal yield RMSE
    int iterations = 0;
    bool converged = false;
    std::optional<double> fixed_omega;  // set when omega was held out of the search
};

struct CalibrateOptions {
    NelderMeadOptions nm;
    mc::SimConfig sim;                   // sim.r0 NaN means "use the curve's shortest-tenor yield"
    std::optional<ParamBounds> bounds;   // defaults to the model's box

    CalibrateOptions() { sim.r0 = std::numeric_limits<double>::quiet_NaN(); }
};

namespace detail {

inline mc::SimConfig resolve_sim(const YieldCurve& curve, mc::SimConfig cfg) {
    if (std::isnan(cfg.r0)) cfg.r0 = curve[0].yield;
    cfg.validate();
    return cfg;
}

template <typename PriceFn>
std::vector<TenorFit> fit_table(const YieldCurve& curve, PriceFn&& model_price) {
    std::vector<TenorFit> fits;
    fits.reserve(curve.size());
    for (const auto& pt : curve.points()) {
        TenorFit f{};
        f.tenor_years = pt.tenor.years;
        f.observed_yield = pt.yield;
        f.observed_price = std::exp(-pt.tenor.years * pt.yield);
        f.model_price = model_price(pt.tenor.years);
        f.fitted_yield = yield_from_price(Tenor(pt.tenor.years), f.model_price);
        f.yield_error = f.observed_yield - f.fitted_yield;
        fits.push_back(f);
    }
    return fits;
}

}  // namespace detail

inline CalibrationResult calibrate_hw(const YieldCurve& curve, const hw::Params& x0,
                                      const CalibrateOptions& opts = {}) {
    x0.validate();
    const mc::SimConfig cfg = detail::resolve_sim(curve, opts.sim);
    const ParamBounds bounds = opts.bounds.value_or(ParamBounds::hw_default());
    mc::PriceCache cache;  // unused by the closed form but keeps one code path

    auto f = [&](const std::vector<double>& v) {
        return objective(mc::ModelKind::Hw, v, curve, cfg, cache, &bounds);
    };
    const auto nm = nelder_mead(f, {x0.kappa, x0.theta, x0.sigma}, opts.nm);

    hw::Params best{clamp_to(bounds, 0, nm.x[0]), clamp_to(bounds, 1, nm.x[1]),
                    clamp_to(bounds, 2, nm.x[2])};
    CalibrationResult result;
    result.kind = mc::ModelKind::Hw;
    result.params = best;
    result.objective = nm.fx;
    result.per_tenor = detail::fit_table(
        curve, [&](double T) { return hw::bond_price(best, cfg.r0, T).price; });
    result.rmse = rmse_yield(result.per_tenor);
    result.iterations = nm.iterations;
    result.converged = nm.converged;
    return result;
}

// fix_omega pins the cycle frequency (radians/year) and searches the other
// four parameters; pass std::nullopt to let the search move omega as well.
inline CalibrationResult calibrate_sin_hw(
    const YieldCurve& curve, const sinhw::Params& x0,
    std::optional<double> fix_omega = sinhw::omega_from_period_years(22.0),
    const CalibrateOptions& opts = {}) {
    x0.validate();
    if (fix_omega && !(*fix_omega > 0.0 && std::isfinite(*fix_omega)))
        throw std::domain_error("fixed omega must be positive");
    const mc::SimConfig cfg = detail::resolve_sim(curve, opts.sim);
    const ParamBounds bounds = opts.bounds.value_or(ParamBounds::sin_hw_default());
    mc::PriceCache cache;

    const double omega0 = fix_omega ? *fix_omega : x0.omega;
    auto expand = [&](const std::vector<double>& v) {
        if (fix_omega) return std::vector<double>{v[0], v[1], omega0, v[2], v[3]};
        return v;
    };
    auto f = [&](const std::vector<double>& v) {
        return objective(mc::ModelKind::SinHw, expand(v), curve, cfg, cache, &bounds);
    };

    std::vector<double> start;
    if (fix_omega)
        start = {x0.kappa0, x0.amp, x0.theta, x0.sigma};
    else
        start = {x0.kappa0, x0.amp, x0.omega, x0.theta, x0.sigma};

    const auto nm = nelder_mead(f, start, opts.nm);
    const std::vector<double> full = expand(nm.x);

    sinhw::Params best{clamp_to(bounds, 0, full[0]), clamp_to(bounds, 1, full[1]),
                       clamp_to(bounds, 2, full[2]), clamp_to(bounds, 3, full[3]),
                       clamp_to(bounds, 4, full[4])};
    CalibrationResult result;
    result.kind = mc::ModelKind::SinHw;
    result.params = best;
    result.objective = nm.fx;
    result.per_tenor = detail::fit_table(
        curve, [&](double T) { return mc::mc_bond_price(best, cfg, T, &cache).price; });
    result.rmse = rmse_yield(result.per_tenor);
    result.iterations = nm.iterations;
    result.converged = nm.converged;
    result.fixed_omega = fix_omega;
    return result;
}

}  // namespace ratecycle::calib
