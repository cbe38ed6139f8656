#include "blogrank/date.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace blogrank {

namespace {

std::string format_ymd(int y, unsigned m, unsigned d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return buf;
}

bool all_digits(std::string_view s) {
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return !s.empty();
}

int to_int(std::string_view s) {
    int value = 0;
    std::from_chars(s.data(), s.data() + s.size(), value);
    return value;
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
        throw std::invalid_argument("invalid calendar date " + format_ymd(year, month, day));
    }
    day_ = std::chrono::sys_days{ymd};
}

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' || !all_digits(iso.substr(0, 4)) ||
        !all_digits(iso.substr(5, 2)) || !all_digits(iso.substr(8, 2))) {
        throw std::invalid_argument("invalid date \"" + std::string(iso) + "\" (expected YYYY-MM-DD)");
    }
    return Date(to_int(iso.substr(0, 4)), static_cast<unsigned>(to_int(iso.substr(5, 2))),
                static_cast<unsigned>(to_int(iso.substr(8, 2))));
}

Date Date::first_of_month(int year, unsigned month) {
    return Date(year, month, 1);
}

Date Date::last_of_month(int year, unsigned month) {
    if (month < 1 || month > 12) {
        throw std::invalid_argument("invalid month " + std::to_string(month));
    }
    const std::chrono::year_month_day_last eom{std::chrono::year{year},
                                               std::chrono::month_day_last{std::chrono::month{month}}};
    return Date{std::chrono::sys_days{eom}};
}

int Date::year() const {
    return static_cast<int>(std::chrono::year_month_day{day_}.year());
}

unsigned Date::month() const {
    return static_cast<unsigned>(std::chrono::year_month_day{day_}.month());
}

unsigned Date::day() const {
    return static_cast<unsigned>(std::chrono::year_month_day{day_}.day());
}

Date Date::plus_days(long n) const {
    return Date{day_ + std::chrono::days{n}};
}

std::string Date::to_string() const {
    return format_ymd(year(), month(), day());
}

long age_days(Date earlier, Date later) {
    const long diff = later.serial_days() - earlier.serial_days();
    if (diff < 0) {
        throw std::invalid_argument("date " + later.to_string() + " precedes " + earlier.to_string());
    }
    return diff;
}

}  // namespace blogrank
