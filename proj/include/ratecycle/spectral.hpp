#pragma once

// Periodicity diagnostics for yield series: mean-detrending, one-sided DFT
// magnitude spectra, dominant-period extraction, sample autocorrelations,
// and the Ljung-Box portmanteau test.
//
// Frequencies are in cycles per sample; a peak at bin k of an n-sample
// series corresponds to a period of n / k samples.  Magnitudes are raw
// |X_k| of the unnormalized DFT.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "ratecycle/fft.hpp"

namespace ratecycle::spectral {

inline std::vector<double> detrend_mean(const std::vector<double>& series) {
    if (series.empty()) throw std::invalid_argument("cannot detrend an empty series");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(series.size());
    std::vector<double> out;
    out.reserve(series.size());
    for (double v : series) out.push_back(v - mean);
    return out;
}

struct Spectrum {
    std::size_t n_samples = 0;
    std::vector<double> frequencies;  // k / n cycles per sample, k = 0..n/2
    std::vector<double> magnitudes;   // |X_k|
};

inline Spectrum magnitude_spectrum(const std::vector<double>& series) {
    const std::size_t n = series.size();
    if (n < 4) throw std::invalid_argument("need at least 4 samples for a spectrum");
    for (double v : series)
        if (!std::isfinite(v)) throw std::invalid_argument("series contains a non-finite value");

    const auto coeffs = fft::dft_real(series);
    Spectrum s;
    s.n_samples = n;
    const std::size_t half = n / 2;
    s.frequencies.reserve(half + 1);
    s.magnitudes.reserve(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        s.frequencies.push_back(static_cast<double>(k) / static_cast<double>(n));
        s.magnitudes.push_back(std::abs(coeffs[k]));
    }
    return s;
}

// Positive-frequency magnitudes (bin 0 excluded) ranked by magnitude, ties
// broken toward lower frequency, returned as periods in samples (n / k).
// Ranking is by magnitude alone — not by local-maximum tests — because
// neighbouring bins of one broad feature legitimately rank together (the
// half-length period of a long cycle sits in the bin adjacent to it).  Bins
// below a relative floor of 1e-9 of the strongest magnitude are ignored as
// arithmetic noise, so an exactly-on-bin tone reports only itself.
inline std::vector<double> dominant_periods(const Spectrum& s, int k_peaks) {
    if (k_peaks < 1) throw std::invalid_argument("need at least one requested peak");
    const std::size_t kmax = s.magnitudes.size() - 1;
    if (kmax < 1) return {};

    double peak_mag = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) peak_mag = std::max(peak_mag, s.magnitudes[k]);
    const double floor = 1e-9 * peak_mag;

    std::vector<std::pair<double, std::size_t>> peaks;  // (magnitude, bin)
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double m = s.magnitudes[k];
        if (m > floor) peaks.emplace_back(m, k);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    std::vector<double> periods;
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k_peaks), peaks.size());
    periods.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        periods.push_back(static_cast<double>(s.n_samples) / static_cast<double>(peaks[i].second));
    return periods;
}

// Sample autocorrelations rho_0..rho_max_lag with the biased (1/n) variance
// normalization used by standard portmanteau tests.
inline std::vector<double> acf(const std::vector<double>& series, int max_lag) {
    const std::size_t n = series.size();
    if (max_lag < 0) throw std::invalid_argument("max_lag must be non-negative");
    if (static_cast<std::size_t>(max_lag) >= n)
        throw std::invalid_argument("max_lag must be smaller than the series length");

    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);

    double denom = 0.0;
    for (double v : series) denom += (v - mean) * (v - mean);
    if (denom == 0.0) throw std::domain_error("autocorrelation undefined for a constant series");

    std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1);
    rho[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t)
            num += (series[t] - mean) * (series[t + static_cast<std::size_t>(k)] - mean);
        rho[static_cast<std::size_t>(k)] = num / denom;
    }
    return rho;
}

struct LjungBoxResult {
    double statistic = 0.0;
    int lags = 0;
    double p_value = 1.0;
};

// Q = n (n + 2) sum_{k=1}^{m} rho_k^2 / (n - k), compared against a
// chi-squared distribution with m degrees of freedom.
inline LjungBoxResult ljung_box(const std::vector<double>& series, int lags) {
    const std::size_t n = series.size();
    if (lags < 1) throw std::invalid_argument("need at least one lag");
    if (static_cast<std::size_t>(lags) * 2 >= n)
        throw std::invalid_argument("lags must be fewer than half the series length");

    const auto rho = acf(series, lags);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k)
        q += rho[static_cast<std::size_t>(k)] * rho[static_cast<std::size_t>(k)] /
             static_cast<double>(n - static_cast<std::size_t>(k));
    q *= static_cast<double>(n) * (static_cast<double>(n) + 2.0);

    LjungBoxResult r;
    r.statistic = q;
    r.lags = lags;
    // Survival function of chi^2_m at q via the regularized upper gamma.
    r.p_value = boost::math::gamma_q(static_cast<double>(lags) / 2.0, q / 2.0);
    return r;
}

// Period unit conversions for daily-sampled series.
inline constexpr double calendar_days_per_year = 365.25;
inline constexpr double trading_days_per_year = 252.0;

struct PeriodReport {
    double tenor_years = 0.0;
    std::vector<double> periods_samples;
    std::vector<double> periods_years_calendar;
    std::vector<double> periods_years_trading;
};

inline PeriodReport period_report(double tenor_years, const Spectrum& s, int k_peaks) {
    PeriodReport r;
    r.tenor_years = tenor_years;
    r.periods_samples = dominant_periods(s, k_peaks);
    r.periods_years_calendar.reserve(r.periods_samples.size());
    r.periods_years_trading.reserve(r.periods_samples.size());
    for (double p : r.periods_samples) {
        r.periods_years_calendar.push_back(p / calendar_days_per_year);
        r.periods_years_trading.push_back(p / trading_days_per_year);
    }
    return r;
}

}  // namespace ratecycle::spectral
