#pragma once

// Calendar dates for yield-history bookkeeping.  Supports the two layouts
// seen in downloadable Treasury files: ISO "YYYY-MM-DD" and US "M/D/YYYY".

#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ratecycle {

struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    friend auto operator<=>(const Date&, const Date&) = default;

    static bool is_leap(int y) {
        return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    }

    static int days_in_month(int y, int m) {
        static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        if (m < 1 || m > 12) return 0;
        if (m == 2 && is_leap(y)) return 29;
        return lengths[m - 1];
    }

    bool valid() const {
        return year >= 1 && month >= 1 && month <= 12 && day >= 1 &&
               day <= days_in_month(year, month);
    }

    // 0 = Sunday ... 6 = Saturday (Sakamoto's method).
    int day_of_week() const {
        static constexpr int t[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
        int y = year - (month < 3);
        return (y + y / 4 - y / 100 + y / 400 + t[month - 1] + day) % 7;
    }

    bool is_weekday() const {
        int w = day_of_week();
        return w != 0 && w != 6;
    }

    Date next_day() const {
        Date d = *this;
        if (++d.day > days_in_month(d.year, d.month)) {
            d.day = 1;
            if (++d.month > 12) {
                d.month = 1;
                ++d.year;
            }
        }
        return d;
    }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
        return buf;
    }

    static Date parse(std::string_view s);
};

namespace detail {

inline bool parse_int_field(std::string_view s, std::size_t& pos, char sep, int& out) {
    std::size_t start = pos;
    long v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        v = v * 10 + (s[pos] - '0');
        if (v > 1000000) return false;
        ++pos;
    }
    if (pos == start) return false;
    out = static_cast<int>(v);
    if (sep == '\0') return pos == s.size();
    if (pos >= s.size() || s[pos] != sep) return false;
    ++pos;
    return true;
}

}  // namespace detail

inline Date Date::parse(std::string_view s) {
    auto fail = [&]() -> Date {
        throw std::invalid_argument("unparseable date: '" + std::string(s) + "'");
    };
    Date d;
    std::size_t pos = 0;
    if (s.find('-') != std::string_view::npos) {
        if (!detail::parse_int_field(s, pos, '-', d.year) ||
            !detail::parse_int_field(s, pos, '-', d.month) ||
            !detail::parse_int_field(s, pos, '\0', d.day))
            return fail();
    } else if (s.find('/') != std::string_view::npos) {
        if (!detail::parse_int_field(s, pos, '/', d.month) ||
            !detail::parse_int_field(s, pos, '/', d.day) ||
            !detail::parse_int_field(s, pos, '\0', d.year))
            return fail();
    } else {
        return fail();
    }
    if (!d.valid()) throw std::invalid_argument("date out of range: '" + std::string(s) + "'");
    return d;
}

}  // namespace ratecycle
