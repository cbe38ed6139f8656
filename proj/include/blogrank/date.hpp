#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace blogrank {

/// Calendar date at day granularity. Every timestamp in a corpus uses this
/// type; finer time scales (comment hours/minutes) are deliberately not
/// modeled.
class Date {
public:
    Date() = default;  // 1970-01-01
    Date(int year, unsigned month, unsigned day);

    /// Parses "YYYY-MM-DD". Throws std::invalid_argument on malformed input
    /// or an impossible calendar date.
    static Date parse(std::string_view iso);

    static Date first_of_month(int year, unsigned month);
    static Date last_of_month(int year, unsigned month);

    int year() const;
    unsigned month() const;
    unsigned day() const;

    /// Days since 1970-01-01; negative for earlier dates.
    long serial_days() const { return static_cast<long>(day_.time_since_epoch().count()); }

    Date plus_days(long n) const;

    std::string to_string() const;

    auto operator<=>(const Date&) const = default;

private:
    explicit Date(std::chrono::sys_days d) : day_(d) {}

    std::chrono::sys_days day_{};
};

/// Whole-day interval from earlier to later, calendar-exact (leap years
/// honored). Throws std::invalid_argument when later precedes earlier.
long age_days(Date earlier, Date later);

}  // namespace blogrank
