#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pegstab {

// Calendar day stored as days since 1970-01-01 (UTC). Arithmetic on Date is
// arithmetic on whole days, which makes gap detection and daily indexing
// trivial.
class Date {
public:
    Date() = default;
    explicit constexpr Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

    static Date from_ymd(int year, int month, int day);

    // Accepts "YYYY-MM-DD" and timestamp forms such as
    // "2019-11-01 00:00:00 UTC" (CoinGecko snapped_at); timestamps truncate
    // to the UTC date. Also accepts "M/D/YYYY" and "D-Mon-YY" as they appear
    // in FDIC exports. Throws InputError on anything else.
    static Date parse(std::string_view text);

    constexpr std::int32_t days_since_epoch() const { return days_; }

    int year() const;
    int month() const;
    int day() const;

    std::string to_string() const;  // ISO "YYYY-MM-DD"

    constexpr Date operator+(int days) const { return Date(days_ + days); }
    constexpr Date operator-(int days) const { return Date(days_ - days); }
    constexpr int operator-(Date other) const { return days_ - other.days_; }
    Date& operator++() { ++days_; return *this; }

    constexpr auto operator<=>(const Date&) const = default;

private:
    std::int32_t days_ = 0;
};

}  // namespace pegstab
