#include "pegstab/dates.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "pegstab/errors.hpp"

namespace pegstab {
namespace {

// Howard Hinnant's civil-date algorithms; valid over the full int range.
constexpr std::int32_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u
                         + static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int32_t>(doe) - 719468;
}

constexpr std::array<int, 3> civil_from_days(std::int32_t z) {
    z += 719468;
    const std::int32_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const int d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    const int m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    return {y + (m <= 2), m, d};
}

constexpr bool is_leap(int y) {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

int days_in_month(int y, int m) {
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

bool parse_int(std::string_view s, int& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

int month_from_name(std::string_view name) {
    static constexpr std::string_view names[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                                 "jul", "aug", "sep", "oct", "nov", "dec"};
    if (name.size() < 3) return 0;
    std::string lowered;
    for (char c : name.substr(0, 3)) lowered.push_back(static_cast<char>(std::tolower(c)));
    for (int i = 0; i < 12; ++i)
        if (lowered == names[i]) return i + 1;
    return 0;
}

[[noreturn]] void bad_date(std::string_view text) {
    throw InputError("unparseable date: '" + std::string(text) + "'");
}

}  // namespace

Date Date::from_ymd(int year, int month, int day) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
        throw InputError("invalid calendar day: " + std::to_string(year) + "-" +
                         std::to_string(month) + "-" + std::to_string(day));
    return Date(days_from_civil(year, month, day));
}

Date Date::parse(std::string_view text) {
    // Trim surrounding whitespace.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) bad_date(text);

    // ISO date, optionally followed by a time-of-day suffix ("... 00:00:00 UTC").
    if (text.size() >= 10 && text[4] == '-' && text[7] == '-') {
        int y, m, d;
        if (parse_int(text.substr(0, 4), y) && parse_int(text.substr(5, 2), m) &&
            parse_int(text.substr(8, 2), d) &&
            (text.size() == 10 || text[10] == ' ' || text[10] == 'T'))
            return from_ymd(y, m, d);
        bad_date(text);
    }

    // M/D/YYYY
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto slash2 = text.find('/', slash + 1);
        if (slash2 == std::string_view::npos) bad_date(text);
        int m, d, y;
        if (!parse_int(text.substr(0, slash), m) ||
            !parse_int(text.substr(slash + 1, slash2 - slash - 1), d) ||
            !parse_int(text.substr(slash2 + 1), y))
            bad_date(text);
        if (y < 100) y += y < 70 ? 2000 : 1900;
        return from_ymd(y, m, d);
    }

    // D-Mon-YY (FDIC failed-bank exports)
    if (auto dash = text.find('-'); dash != std::string_view::npos) {
        auto dash2 = text.find('-', dash + 1);
        if (dash2 == std::string_view::npos) bad_date(text);
        int d, y;
        int m = month_from_name(text.substr(dash + 1, dash2 - dash - 1));
        if (m == 0 || !parse_int(text.substr(0, dash), d) || !parse_int(text.substr(dash2 + 1), y))
            bad_date(text);
        if (y < 100) y += y < 70 ? 2000 : 1900;
        return from_ymd(y, m, d);
    }

    bad_date(text);
}

int Date::year() const { return civil_from_days(days_)[0]; }
int Date::month() const { return civil_from_days(days_)[1]; }
int Date::day() const { return civil_from_days(days_)[2]; }

std::string Date::to_string() const {
    const auto [y, m, d] = civil_from_days(days_);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

}  // namespace pegstab
