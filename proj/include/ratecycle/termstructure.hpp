#pragma once

// Term-structure primitives: tenors, zero-coupon bond prices, yield curves,
// and ingestion of FRED-style daily constant-maturity yield histories.
//
// Conventions: continuous compounding, yields stored as decimals (0.0245 for
// 2.45%), zero-coupon prices on a unit face value, tenors in year units.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ratecycle/csv.hpp"
#include "ratecycle/dates.hpp"

namespace ratecycle {

// Strong type for a positive year fraction so maturities cannot be confused
// with yields or prices at call sites.
struct Tenor {
    double years;

    explicit Tenor(double y) : years(y) {
        if (!std::isfinite(y) || y <= 0.0)
            throw std::domain_error("tenor must be a positive finite number of years");
    }

    friend auto operator<=>(const Tenor&, const Tenor&) = default;
};

struct BondPrice {
    Tenor tenor;
    double price;

    BondPrice(Tenor t, double p) : tenor(t), price(p) {
        if (!std::isfinite(p) || p <= 0.0)
            throw std::domain_error("bond price must be positive and finite");
    }
};

inline BondPrice price_from_yield(Tenor t, double y) {
    if (!std::isfinite(y)) throw std::invalid_argument("yield must be finite");
    return BondPrice(t, std::exp(-t.years * y));
}

inline double yield_from_price(Tenor t, double price) {
    if (!std::isfinite(price) || price <= 0.0)
        throw std::domain_error("cannot imply a yield from a non-positive price");
    return -std::log(price) / t.years;
}

inline double yield_from_price(const BondPrice& p) {
    return yield_from_price(p.tenor, p.price);
}

struct CurvePoint {
    Tenor tenor;
    double yield;
};

// A single day's zero curve: strictly increasing tenors, finite yields.
class YieldCurve {
  public:
    YieldCurve(Date as_of, std::vector<CurvePoint> points)
        : as_of_(as_of), points_(std::move(points)) {
        if (points_.empty()) throw std::invalid_argument("yield curve needs at least one point");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!std::isfinite(points_[i].yield))
                throw std::invalid_argument("yield curve contains a non-finite yield");
            if (i > 0 && points_[i].tenor.years <= points_[i - 1].tenor.years)
                throw std::invalid_argument("yield curve tenors must be strictly increasing");
        }
    }

    const Date& as_of() const { return as_of_; }
    const std::vector<CurvePoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const CurvePoint& operator[](std::size_t i) const { return points_.at(i); }

    std::vector<double> tenor_years() const {
        std::vector<double> out;
        out.reserve(points_.size());
        for (const auto& p : points_) out.push_back(p.tenor.years);
        return out;
    }

    std::vector<double> yields() const {
        std::vector<double> out;
        out.reserve(points_.size());
        for (const auto& p : points_) out.push_back(p.yield);
        return out;
    }

    std::vector<double> observed_prices() const {
        std::vector<double> out;
        out.reserve(points_.size());
        for (const auto& p : points_) out.push_back(std::exp(-p.tenor.years * p.yield));
        return out;
    }

  private:
    Date as_of_;
    std::vector<CurvePoint> points_;
};

// Daily history of yields per tenor.  Missing observations (holidays marked
// "." in FRED exports) are held as nullopt so series stay date-aligned.
class YieldHistory {
  public:
    YieldHistory(std::vector<Date> dates, std::map<double, std::vector<std::optional<double>>> series)
        : dates_(std::move(dates)), series_(std::move(series)) {
        for (const auto& [tenor, values] : series_)
            if (values.size() != dates_.size())
                throw std::invalid_argument("series length does not match date axis");
    }

    const std::vector<Date>& dates() const { return dates_; }
    std::size_t n_rows() const { return dates_.size(); }

    std::vector<double> tenors() const {
        std::vector<double> out;
        out.reserve(series_.size());
        for (const auto& [tenor, _] : series_) out.push_back(tenor);
        return out;
    }

    const std::vector<std::optional<double>>& series(double tenor_years) const {
        auto it = series_.find(tenor_years);
        if (it == series_.end())
            throw std::invalid_argument("no series for tenor " + csv::format_number(tenor_years));
        return it->second;
    }

    // Non-missing values in date order; this is the sampling used everywhere
    // downstream (spectral analysis treats it as uniformly spaced).
    std::vector<double> compact_series(double tenor_years) const {
        const auto& raw = series(tenor_years);
        std::vector<double> out;
        out.reserve(raw.size());
        for (const auto& v : raw)
            if (v) out.push_back(*v);
        return out;
    }

  private:
    std::vector<Date> dates_;
    std::map<double, std::vector<std::optional<double>>> series_;
};

class IngestionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Maps CSV column names to tenors.  Defaults follow FRED's DGS series names.
struct CsvLayout {
    std::string date_column = "DATE";
    std::vector<std::pair<double, std::string>> tenor_columns = {
        {1.0, "DGS1"},  {2.0, "DGS2"},   {3.0, "DGS3"},  {5.0, "DGS5"},
        {7.0, "DGS7"},  {10.0, "DGS10"}, {20.0, "DGS20"}, {30.0, "DGS30"},
    };
};

namespace detail {

inline bool is_missing_field(const std::string& f) {
    if (f.empty() || f == "." || f == "NA" || f == "N/A") return true;
    return false;
}

inline double parse_yield_pct(const std::string& f, std::size_t row, const std::string& col) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(f, &used);
    } catch (const std::exception&) {
        throw IngestionError("row " + std::to_string(row) + ", column " + col +
                             ": unparseable value '" + f + "'");
    }
    while (used < f.size() && (f[used] == ' ' || f[used] == '%')) ++used;
    if (used != f.size() || !std::isfinite(v))
        throw IngestionError("row " + std::to_string(row) + ", column " + col +
                             ": unparseable value '" + f + "'");
    return v / 100.0;  // published as percent, stored as decimal
}

}  // namespace detail

// Reads a FRED-style CSV (DATE column + one percent-yield column per tenor).
// Rows must be in ascending date order; "." marks a missing observation.
inline YieldHistory load_history(const std::filesystem::path& path, const CsvLayout& layout = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError("cannot open input file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw IngestionError("empty input file: " + path.string());
    auto header = csv::split_line(csv::strip_cr(line));

    auto column_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw IngestionError("missing required column '" + name + "' in " + path.string());
    };

    std::size_t date_idx = column_index(layout.date_column);
    std::vector<std::pair<double, std::size_t>> tenor_idx;
    tenor_idx.reserve(layout.tenor_columns.size());
    for (const auto& [tenor, name] : layout.tenor_columns)
        tenor_idx.emplace_back(tenor, column_index(name));
    if (tenor_idx.empty()) throw IngestionError("no tenor columns requested");

    std::vector<Date> dates;
    std::map<double, std::vector<std::optional<double>>> series;
    for (const auto& [tenor, _] : tenor_idx) series[tenor] = {};

    std::size_t row = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row;
        std::string stripped = csv::strip_cr(line);
        if (stripped.empty()) continue;
        auto fields = csv::split_line(stripped);
        if (fields.size() != header.size())
            throw IngestionError("row " + std::to_string(row) + ": expected " +
                                 std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()));
        Date d;
        try {
            d = Date::parse(fields[date_idx]);
        } catch (const std::invalid_argument& e) {
            throw IngestionError("row " + std::to_string(row) + ": " + e.what());
        }
        if (!dates.empty() && !(dates.back() < d))
            throw IngestionError("row " + std::to_string(row) +
                                 ": dates must be strictly increasing (" + d.to_string() +
                                 " after " + dates.back().to_string() + ")");
        dates.push_back(d);
        for (const auto& [tenor, idx] : tenor_idx) {
            const std::string& f = fields[idx];
            if (detail::is_missing_field(f))
                series[tenor].push_back(std::nullopt);
            else
                series[tenor].push_back(detail::parse_yield_pct(f, row, header[idx]));
        }
    }
    if (dates.empty()) throw IngestionError("no data rows in " + path.string());
    return YieldHistory(std::move(dates), std::move(series));
}

// Curve from the last date where every requested tenor has an observation.
inline YieldCurve latest_curve(const YieldHistory& history) {
    const auto tenors = history.tenors();
    const std::size_t n = history.n_rows();
    for (std::size_t back = 0; back < n; ++back) {
        std::size_t i = n - 1 - back;
        bool complete = true;
        for (double t : tenors)
            if (!history.series(t)[i]) {
                complete = false;
                break;
            }
        if (!complete) continue;
        std::vector<CurvePoint> points;
        points.reserve(tenors.size());
        for (double t : tenors) points.push_back({Tenor(t), *history.series(t)[i]});
        return YieldCurve(history.dates()[i], std::move(points));
    }
    throw IngestionError("no row has observations for every tenor");
}

}  // namespace ratecycle
