#pragma once

// Independent reference implementations used only to cross-check the
// library: adaptive Simpson quadrature and a definitional O(n^2) DFT.
// Deliberately written with different algorithms than the code under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracles {

namespace detail {

template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-12, int depth = 40) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Textbook DFT: X_k = sum_j x_j exp(-2 pi i jk / n), with the phase reduced
// modulo n in integer arithmetic so large jk products stay accurate.
inline std::vector<std::complex<double>> dft_reference(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const std::uint64_t q = (static_cast<std::uint64_t>(j) * k) % n;
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace oracles
