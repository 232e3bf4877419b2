#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace volwriter {

using Date = std::chrono::year_month_day;

/// Parses "YYYY-MM-DD". Throws DataError on malformed input.
Date parse_date(std::string_view text);

std::string format_date(const Date& d);

inline Date add_calendar_days(const Date& d, int days) {
    return Date{std::chrono::sys_days(d) + std::chrono::days(days)};
}

inline int days_between(const Date& from, const Date& to) {
    return int((std::chrono::sys_days(to) - std::chrono::sys_days(from)).count());
}

inline bool is_weekday(const Date& d) {
    const std::chrono::weekday wd{std::chrono::sys_days(d)};
    return wd != std::chrono::Saturday && wd != std::chrono::Sunday;
}

/// A calendar date plus a 0-based minute index within the trading session.
struct Timestamp {
    Date date{};
    int minute = 0;

    friend constexpr auto operator<=>(const Timestamp& a, const Timestamp& b) {
        if (auto c = std::chrono::sys_days(a.date) <=> std::chrono::sys_days(b.date);
            c != std::strong_ordering::equal)
            return c;
        return a.minute <=> b.minute;
    }
    friend constexpr bool operator==(const Timestamp&, const Timestamp&) = default;
};

std::string format_timestamp(const Timestamp& t);

} // namespace volwriter
