#pragma once

// Discrete Fourier transform for arbitrary lengths: iterative radix-2
// Cooley-Tukey for powers of two, Bluestein's chirp-z algorithm otherwise
// (daily yield histories have awkward prime-factored lengths).  Forward
// transform, unnormalized: X_k = sum_j x_j exp(-2 pi i j k / n).

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ratecycle::fft {

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative Cooley-Tukey; twiddles come from fresh sin/cos per
// butterfly column rather than a recurrence, for accuracy at long lengths.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> w = std::polar(1.0, ang * static_cast<double>(j));
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse)
        for (auto& z : a) z /= static_cast<double>(n);
}

// Chirp factor exp(i pi m^2 / n) with the quadratic phase reduced modulo 2n
// in integer arithmetic, so the angle stays accurate for large m.
inline std::complex<double> chirp(std::size_t m, std::size_t n) {
    const std::uint64_t q = (static_cast<std::uint64_t>(m) * m) % (2 * static_cast<std::uint64_t>(n));
    return std::polar(1.0, std::numbers::pi * static_cast<double>(q) / static_cast<double>(n));
}

inline std::vector<std::complex<double>> dft_bluestein(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    const std::size_t L = next_pow2(2 * n - 1);

    std::vector<std::complex<double>> a(L), c(L);
    for (std::size_t j = 0; j < n; ++j) {
        const auto b = chirp(j, n);
        a[j] = x[j] * std::conj(b);
        c[j] = b;
        if (j != 0) c[L - j] = b;  // symmetric tail for negative lags
    }
    fft_pow2(a, false);
    fft_pow2(c, false);
    for (std::size_t j = 0; j < L; ++j) a[j] *= c[j];
    fft_pow2(a, true);

    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = std::conj(chirp(k, n)) * a[k];
    return out;
}

}  // namespace detail

inline std::vector<std::complex<double>> dft(std::vector<std::complex<double>> x) {
    const std::size_t n = x.size();
    if (n <= 1) return x;
    if (detail::is_pow2(n)) {
        detail::fft_pow2(x, false);
        return x;
    }
    return detail::dft_bluestein(x);
}

inline std::vector<std::complex<double>> dft_real(const std::vector<double>& x) {
    std::vector<std::complex<double>> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = {x[i], 0.0};
    return dft(std::move(z));
}

}  // namespace ratecycle::fft
