#pragma once

// Deterministic synthetic Treasury-yield history in FRED CSV form (DATE +
// DGS columns, "." marking holidays), engineered so the tests know its
// analytic content exactly:
//
//  * weekday rows from 1990-01-02 onward, with enough rows marked missing
//    that exactly `kept` observations remain per tenor (all tenors share the
//    same holiday pattern, like a real single-calendar export);
//  * each kept series is a sum of sinusoids placed on exact DFT bins of the
//    kept-sample index, so after mean-detrending the magnitude spectrum has
//    its mass at known bins and dominant periods are exactly kept/k samples;
//  * a constant per-tenor shift pins the final row to a chosen December-2022
//    curve (constant shifts only move the k=0 bin, which detrending removes).
//
// The default shape (8055 kept samples ending 2022-12-30) gives dominant
// periods [1342.5, 8055] at 1y-2y, [2013.75, 8055] at 3y-5y, [4027.5, 8055]
// at 7y-20y, and [8055, 4027.5] at 30y, and a final curve of
// (1.22, 1.75, 1.91, 1.962, 2.0092, 2.00, 2.45, 2.36) percent at tenors
// (1, 2, 3, 5, 7, 10, 20, 30).

#include <cassert>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <ratecycle/dates.hpp>

namespace fixture {

struct ToneSpec {
    int bin;        // DFT bin of the kept-sample axis
    double amp;     // percent units
    double phase;   // radians
};

struct SeriesSpec {
    double tenor_years;
    std::string column;
    double base_pct;
    ToneSpec dominant;
    ToneSpec secondary;
    double target_last_pct;  // final-row value after pinning
};

inline const std::vector<SeriesSpec>& series_specs() {
    static const std::vector<SeriesSpec> specs = {
        {1.0, "DGS1", 3.2, {6, 0.70, 0.3}, {1, 0.45, 2.0}, 1.22},
        {2.0, "DGS2", 3.3, {6, 0.68, 0.5}, {1, 0.43, 2.2}, 1.75},
        {3.0, "DGS3", 3.4, {4, 0.70, 0.8}, {1, 0.44, 2.4}, 1.91},
        {5.0, "DGS5", 3.5, {4, 0.66, 1.0}, {1, 0.42, 2.6}, 1.962},
        {7.0, "DGS7", 3.6, {2, 0.72, 1.2}, {1, 0.40, 2.8}, 2.0092},
        {10.0, "DGS10", 3.7, {2, 0.70, 1.4}, {1, 0.45, 3.0}, 2.00},
        {20.0, "DGS20", 3.9, {2, 0.68, 1.6}, {1, 0.41, 3.2}, 2.45},
        {30.0, "DGS30", 4.0, {1, 0.75, 1.8}, {2, 0.50, 3.4}, 2.36},
    };
    return specs;
}

// Yields of the pinned final curve, as decimals, in tenor order.
inline std::vector<double> final_curve_yields() {
    std::vector<double> ys;
    for (const auto& s : series_specs()) ys.push_back(s.target_last_pct / 100.0);
    return ys;
}

inline std::vector<double> tenor_years() {
    std::vector<double> ts;
    for (const auto& s : series_specs()) ts.push_back(s.tenor_years);
    return ts;
}

namespace detail {

inline double raw_value(const SeriesSpec& s, std::size_t j, std::size_t n) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    double v = s.base_pct;
    v += s.dominant.amp * std::sin(s.dominant.bin * x + s.dominant.phase);
    v += s.secondary.amp * std::sin(s.secondary.bin * x + s.secondary.phase);
    // low-level texture on another exact bin, far below the two real tones
    v += 0.002 * std::sin(97.0 * x + s.tenor_years);
    return v;
}

inline std::string render(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);  // exact round-trip
    return buf;
}

}  // namespace detail

// Writes the CSV; `weekdays` rows starting 1990-01-02, of which `kept` carry
// observations.  Returns the number of kept rows (== kept).
inline int write_history_csv(const std::filesystem::path& path, int weekdays, int kept) {
    assert(kept > 1 && weekdays >= kept);
    using ratecycle::Date;

    std::vector<Date> days;
    days.reserve(static_cast<std::size_t>(weekdays));
    for (Date d{1990, 1, 2}; static_cast<int>(days.size()) < weekdays; d = d.next_day())
        if (d.is_weekday()) days.push_back(d);

    // Spread the missing rows evenly, never touching the first or last row.
    std::vector<bool> missing(static_cast<std::size_t>(weekdays), false);
    const int n_missing = weekdays - kept;
    for (int m = 0; m < n_missing; ++m) {
        const auto idx = static_cast<std::size_t>(
            (static_cast<double>(m) + 1.0) * static_cast<double>(weekdays) /
            (static_cast<double>(n_missing) + 1.0));
        missing[idx] = true;
    }
    int actually_missing = 0;
    for (bool b : missing) actually_missing += b ? 1 : 0;
    assert(actually_missing == n_missing);

    const auto& specs = series_specs();
    const std::size_t n = static_cast<std::size_t>(kept);
    std::vector<double> shift(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s)
        shift[s] = specs[s].target_last_pct - detail::raw_value(specs[s], n - 1, n);

    std::ofstream out(path, std::ios::binary);
    assert(out);
    out << "DATE";
    for (const auto& s : specs) out << ',' << s.column;
    out << '\n';

    std::size_t j = 0;
    for (std::size_t i = 0; i < days.size(); ++i) {
        out << days[i].to_string();
        if (missing[i]) {
            for (std::size_t s = 0; s < specs.size(); ++s) out << ",.";
        } else {
            for (std::size_t s = 0; s < specs.size(); ++s)
                out << ',' << detail::render(detail::raw_value(specs[s], j, n) + shift[s]);
            ++j;
        }
        out << '\n';
    }
    assert(j == n);
    return kept;
}

// Full-size history covering 1990..2022: weekday rows
// through 2022-12-30 with exactly 8055 kept observations.
inline int write_history_csv(const std::filesystem::path& path) {
    using ratecycle::Date;
    int weekdays = 0;
    const Date last{2022, 12, 30};
    for (Date d{1990, 1, 2}; !(last < d); d = d.next_day())
        if (d.is_weekday()) ++weekdays;
    return write_history_csv(path, weekdays, 8055);
}

// Compact variant for CLI round-trip tests: 620 weekday rows, 600 kept.
inline int write_small_history_csv(const std::filesystem::path& path) {
    return write_history_csv(path, 620, 600);
}

}  // namespace fixture
