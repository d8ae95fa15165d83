#pragma once

// Derivative-free simplex minimizer (Nelder-Mead) with the standard
// coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
// The initial simplex perturbs each coordinate of the start point by 5%
// (0.00025 absolute when the coordinate is zero).  The run stops when every
// vertex coordinate sits within `xatol` of the best vertex AND every vertex
// objective sits within `fatol` of the best, or the iteration cap is
// reached.  Both conditions are required: the zero-coordinate simplex is
// narrower than the default `xatol`, so a spread-only stop would declare
// victory at the start point whenever the search begins at an origin
// coordinate; the objective spread rules that out while the surface still
// slopes across the simplex.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ratecycle::calib {

struct NelderMeadOptions {
    double xatol = 1e-3;
    double fatol = 1e-4;
    int max_iter = 0;  // 0 means 200 * dimension
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> best_trace;  // best objective value seen, per iteration
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& x0,
                                    const NelderMeadOptions& opts = {}) {
    const std::size_t dim = x0.size();
    if (dim == 0) throw std::invalid_argument("cannot optimize over zero dimensions");
    if (!(opts.xatol > 0.0)) throw std::invalid_argument("xatol must be positive");
    if (!(opts.fatol > 0.0)) throw std::invalid_argument("fatol must be positive");
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : static_cast<int>(200 * dim);

    std::vector<std::vector<double>> simplex;
    simplex.reserve(dim + 1);
    simplex.push_back(x0);
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> v = x0;
        if (v[i] != 0.0)
            v[i] *= 1.05;
        else
            v[i] = 0.00025;
        simplex.push_back(std::move(v));
    }

    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
        fv[i] = f(simplex[i]);
        if (std::isnan(fv[i])) throw std::domain_error("objective returned NaN");
    }

    std::vector<std::size_t> order(dim + 1);
    auto sort_simplex = [&]() {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2(dim + 1);
        std::vector<double> f2(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) {
            s2[i] = std::move(simplex[order[i]]);
            f2[i] = fv[order[i]];
        }
        simplex = std::move(s2);
        fv = std::move(f2);
    };

    auto max_spread = [&]() {
        double m = 0.0;
        for (std::size_t v = 1; v <= dim; ++v)
            for (std::size_t i = 0; i < dim; ++i)
                m = std::max(m, std::abs(simplex[v][i] - simplex[0][i]));
        return m;
    };

    auto max_fspread = [&]() {
        double m = 0.0;
        for (std::size_t v = 1; v <= dim; ++v) m = std::max(m, std::abs(fv[v] - fv[0]));
        return m;
    };

    NelderMeadResult result;
    result.best_trace.reserve(static_cast<std::size_t>(max_iter));

    int iter = 0;
    sort_simplex();
    while (iter < max_iter) {
        if (max_spread() < opts.xatol && max_fspread() < opts.fatol) {
            result.converged = true;
            break;
        }
        ++iter;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v < dim; ++v)
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coef) {
            std::vector<double> x(dim);
            for (std::size_t i = 0; i < dim; ++i)
                x[i] = centroid[i] + coef * (centroid[i] - simplex[dim][i]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = f(xr);
        bool shrink = false;

        if (fr < fv[0]) {
            std::vector<double> xe = blend(2.0);
            const double fe = f(xe);
            if (fe < fr) {
                simplex[dim] = std::move(xe);
                fv[dim] = fe;
            } else {
                simplex[dim] = std::move(xr);
                fv[dim] = fr;
            }
        } else if (fr < fv[dim - 1]) {
            simplex[dim] = std::move(xr);
            fv[dim] = fr;
        } else if (fr < fv[dim]) {
            std::vector<double> xc = blend(0.5);  // outside contraction
            const double fc = f(xc);
            if (fc <= fr) {
                simplex[dim] = std::move(xc);
                fv[dim] = fc;
            } else {
                shrink = true;
            }
        } else {
            std::vector<double> xc = blend(-0.5);  // inside contraction
            const double fc = f(xc);
            if (fc < fv[dim]) {
                simplex[dim] = std::move(xc);
                fv[dim] = fc;
            } else {
                shrink = true;
            }
        }

        if (shrink) {
            for (std::size_t v = 1; v <= dim; ++v) {
                for (std::size_t i = 0; i < dim; ++i)
                    simplex[v][i] = simplex[0][i] + 0.5 * (simplex[v][i] - simplex[0][i]);
                fv[v] = f(simplex[v]);
            }
        }

        sort_simplex();
        result.best_trace.push_back(fv[0]);
    }

    result.x = simplex[0];
    result.fx = fv[0];
    result.iterations = iter;
    return result;
}

}  // namespace ratecycle::calib
