#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <ratecycle/fft.hpp>
#include <ratecycle/spectral.hpp>

#include "support/oracles.hpp"

using namespace ratecycle;

namespace {

std::vector<double> random_series(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = normal(eng);
    return x;
}

std::vector<double> sine(std::size_t n, double period, double amp = 1.0, double phase = 0.0) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t)
        x[t] = amp * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period + phase);
    return x;
}

}  // namespace

TEST_CASE("detrending removes the mean and nothing else") {
    const std::vector<double> x{4.0, 6.0, 5.0, 5.0};
    const auto d = spectral::detrend_mean(x);
    CHECK(d == std::vector<double>{-1.0, 1.0, 0.0, 0.0});
    CHECK_THROWS_AS(spectral::detrend_mean({}), std::invalid_argument);
}

TEST_CASE("dft agrees with the definitional oracle at composite and prime lengths") {
    for (std::size_t n : {240u, 257u, 1024u}) {  // Bluestein, prime Bluestein, radix-2
        const auto x = random_series(n, 1000 + n);
        const auto fast = fft::dft_real(x);
        const auto slow = oracles::dft_reference(x);
        REQUIRE(fast.size() == n);
        double max_mag = 0.0;
        for (const auto& c : slow) max_mag = std::max(max_mag, std::abs(c));
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(fast[k] - slow[k]) < 1e-9 * max_mag);
    }
}

TEST_CASE("dft satisfies parseval's identity") {
    const auto x = random_series(1000, 77);
    const auto X = fft::dft_real(x);
    double time_energy = 0.0;
    for (double v : x) time_energy += v * v;
    double freq_energy = 0.0;
    for (const auto& c : X) freq_energy += std::norm(c);
    CHECK(freq_energy / static_cast<double>(x.size()) ==
          Catch::Approx(time_energy).epsilon(1e-10));
}

TEST_CASE("trivial transform lengths") {
    CHECK(fft::dft_real({}).empty());
    const auto one = fft::dft_real({3.5});
    REQUIRE(one.size() == 1);
    CHECK(one[0] == std::complex<double>{3.5, 0.0});
}

TEST_CASE("magnitude spectrum layout") {
    const auto s = spectral::magnitude_spectrum(random_series(10, 3));
    REQUIRE(s.frequencies.size() == 6);  // k = 0..5
    CHECK(s.n_samples == 10);
    CHECK(s.frequencies[0] == 0.0);
    CHECK(s.frequencies[5] == 0.5);
    CHECK(s.frequencies[1] == Catch::Approx(0.1).epsilon(1e-15));

    CHECK_THROWS_AS(spectral::magnitude_spectrum({1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(spectral::magnitude_spectrum({1.0, 2.0, std::nan(""), 4.0}),
                    std::invalid_argument);
}

TEST_CASE("a pure sine on an exact bin is found exactly") {
    // 2200 samples, period 220 -> bin 10; the dominant period is exact
    const auto x = sine(2200, 220.0, 1.4, 0.6);
    const auto s = spectral::magnitude_spectrum(x);
    const auto periods = spectral::dominant_periods(s, 2);
    REQUIRE(periods.size() == 1);  // leak-free single peak
    CHECK(periods[0] == Catch::Approx(220.0).epsilon(1e-12));
    // unnormalized magnitude of a sine of amplitude A is A n / 2
    CHECK(s.magnitudes[10] == Catch::Approx(1.4 * 2200.0 / 2.0).epsilon(1e-9));
}

TEST_CASE("two tones rank by magnitude") {
    auto x = sine(2400, 2400.0 / 3.0, 0.5);        // bin 3, weaker
    const auto y = sine(2400, 2400.0 / 8.0, 1.0);  // bin 8, stronger
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    const auto periods = spectral::dominant_periods(spectral::magnitude_spectrum(x), 3);
    REQUIRE(periods.size() == 2);
    CHECK(periods[0] == Catch::Approx(300.0).epsilon(1e-12));  // 2400 / 8
    CHECK(periods[1] == Catch::Approx(800.0).epsilon(1e-12));  // 2400 / 3
}

TEST_CASE("ranking rules: magnitude order, ties break toward longer periods") {
    spectral::Spectrum s;
    s.n_samples = 100;
    s.magnitudes = {123.0, 1.0, 5.0, 5.0, 1.0, 7.0, 0.0, 5.0, 0.0};
    for (std::size_t k = 0; k < s.magnitudes.size(); ++k)
        s.frequencies.push_back(static_cast<double>(k) / 100.0);

    const auto periods = spectral::dominant_periods(s, 8);
    // the zero-frequency bin is excluded no matter how large, and the two
    // exactly-zero bins fall below the relative floor
    REQUIRE(periods.size() == 6);
    CHECK(periods[0] == Catch::Approx(20.0));         // bin 5, magnitude 7
    CHECK(periods[1] == Catch::Approx(100.0 / 2.0));  // tie 5.0: lowest bin first
    CHECK(periods[2] == Catch::Approx(100.0 / 3.0));
    CHECK(periods[3] == Catch::Approx(100.0 / 7.0));
    CHECK(periods[4] == Catch::Approx(100.0));        // tie 1.0 again by bin
    CHECK(periods[5] == Catch::Approx(25.0));

    CHECK_THROWS_AS(spectral::dominant_periods(s, 0), std::invalid_argument);
    CHECK(spectral::dominant_periods(s, 2).size() == 2);  // truncation
}

TEST_CASE("adjacent bins rank together and endpoints are eligible") {
    // a long cycle and its half-length neighbour occupy bins 1 and 2; both
    // must be reported, strongest first
    spectral::Spectrum s;
    s.n_samples = 12;
    s.magnitudes = {0.0, 9.0, 6.0, 0.5, 0.2, 0.1, 4.0};  // k = 0..6
    for (std::size_t k = 0; k < s.magnitudes.size(); ++k)
        s.frequencies.push_back(static_cast<double>(k) / 12.0);
    const auto periods = spectral::dominant_periods(s, 3);
    REQUIRE(periods.size() == 3);
    CHECK(periods[0] == Catch::Approx(12.0));      // full length, bin 1
    CHECK(periods[1] == Catch::Approx(6.0));       // half length, bin 2
    CHECK(periods[2] == Catch::Approx(2.0));       // nyquist bin

    spectral::Spectrum flipped = s;
    flipped.magnitudes[1] = 6.0;
    flipped.magnitudes[2] = 9.0;
    const auto swapped = spectral::dominant_periods(flipped, 2);
    REQUIRE(swapped.size() == 2);
    CHECK(swapped[0] == Catch::Approx(6.0));
    CHECK(swapped[1] == Catch::Approx(12.0));
}

TEST_CASE("autocorrelation basics") {
    const auto rho = spectral::acf(random_series(4000, 9), 20);
    REQUIRE(rho.size() == 21);
    CHECK(rho[0] == 1.0);
    for (std::size_t k = 1; k < rho.size(); ++k) CHECK(std::abs(rho[k]) < 0.06);  // white noise

    // AR(1): rho_1 near the autoregressive coefficient
    std::mt19937_64 eng(11);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> ar(20000);
    double prev = 0.0;
    for (auto& v : ar) {
        prev = 0.9 * prev + normal(eng);
        v = prev;
    }
    const auto rho_ar = spectral::acf(ar, 2);
    CHECK(rho_ar[1] == Catch::Approx(0.9).margin(0.02));

    // full-period sinusoid: biased estimator gives (1 - k/n) at one period
    const auto rho_sin = spectral::acf(sine(2400, 12.0), 12);
    CHECK(rho_sin[12] == Catch::Approx(0.995).margin(1e-3));

    CHECK_THROWS_AS(spectral::acf({1.0, 1.0, 1.0}, 2), std::domain_error);  // constant
    CHECK_THROWS_AS(spectral::acf({1.0, 2.0}, 2), std::invalid_argument);   // lag too big
    CHECK_THROWS_AS(spectral::acf({1.0, 2.0}, -1), std::invalid_argument);
}

TEST_CASE("ljung-box matches frozen independent values") {
    // periodic series, n = 24, 5 lags: rho = (0.6111, -0.0278, -0.6111, -0.8333, -0.5)
    const std::vector<double> periodic{1, 2, 3, 4, 5, 4, 3, 2, 1, 2, 3, 4,
                                       5, 4, 3, 2, 1, 2, 3, 4, 5, 4, 3, 2};
    const auto a = spectral::ljung_box(periodic, 5);
    CHECK(a.statistic == Catch::Approx(51.1281253565769).epsilon(1e-12));
    CHECK(a.p_value == Catch::Approx(8.14145818422833e-10).epsilon(1e-9));
    CHECK(a.lags == 5);

    // hand-fixed irregular series, n = 20
    const std::vector<double> calm{0.3,  -1.2, 0.8,  0.1,   -0.5, 1.7,  -0.9, 0.4,  -1.1, 0.6,
                                   -0.2, 1.3,  -0.7, 0.05, 0.9,  -1.4, 0.25, -0.35, 1.1, -0.85};
    const auto b = spectral::ljung_box(calm, 5);
    CHECK(b.statistic == Catch::Approx(11.7612884445095).epsilon(1e-12));
    CHECK(b.p_value == Catch::Approx(0.0382091989243813).epsilon(1e-10));
}

TEST_CASE("ljung-box statistical behaviour") {
    // i.i.d. noise: p should be comfortably away from 0 for a typical seed
    const auto p_noise = spectral::ljung_box(random_series(2000, 21), 30).p_value;
    CHECK(p_noise > 0.001);
    // strong periodicity: overwhelming rejection
    const auto p_sine = spectral::ljung_box(sine(2000, 50.0), 30).p_value;
    CHECK(p_sine < 1e-12);

    CHECK_THROWS_AS(spectral::ljung_box({1.0, 2.0, 3.0, 4.0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(spectral::ljung_box(random_series(100, 3), 0), std::invalid_argument);
}

TEST_CASE("period reports convert sample periods to years") {
    spectral::Spectrum s;
    s.n_samples = 8055;
    s.magnitudes.assign(10, 0.0);
    s.magnitudes[1] = 10.0;
    s.magnitudes[2] = 6.0;
    for (std::size_t k = 0; k < s.magnitudes.size(); ++k)
        s.frequencies.push_back(static_cast<double>(k) / 8055.0);

    const auto r = spectral::period_report(30.0, s, 2);
    REQUIRE(r.periods_samples.size() == 2);
    CHECK(r.tenor_years == 30.0);
    CHECK(r.periods_samples[0] == 8055.0);
    CHECK(r.periods_samples[1] == 4027.5);
    CHECK(r.periods_years_calendar[0] == Catch::Approx(8055.0 / 365.25).epsilon(1e-12));
    CHECK(r.periods_years_trading[0] == Catch::Approx(8055.0 / 252.0).epsilon(1e-12));
    // a 22-year cycle in calendar terms
    CHECK(r.periods_years_calendar[0] == Catch::Approx(22.053).margin(2e-3));
}
