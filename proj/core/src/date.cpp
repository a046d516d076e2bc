#include "bubblecast/date.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace bubblecast {

namespace {

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[static_cast<std::size_t>(m - 1)];
}

}  // namespace

// Civil-date <-> day-count conversion, Howard Hinnant's algorithm.
std::int64_t Date::to_days() const {
    std::int64_t y = year;
    const int m = month;
    const int d = day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date Date::from_days(std::int64_t days) {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

bool Date::valid() const {
    if (month < 1 || month > 12 || day < 1) return false;
    return day <= days_in_month(year, month);
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return std::string(buf);
}

namespace {

std::optional<int> parse_int_field(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::optional<Date> assemble(std::optional<int> y, std::optional<int> m, std::optional<int> d) {
    if (!y || !m || !d) return std::nullopt;
    Date date{*y, *m, *d};
    if (!date.valid()) return std::nullopt;
    return date;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text, DateFormat format) {
    if (format == DateFormat::Iso8601) {
        if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
        return assemble(parse_int_field(text.substr(0, 4)), parse_int_field(text.substr(5, 2)),
                        parse_int_field(text.substr(8, 2)));
    }
    // MM/DD/YYYY, tolerating one-digit month/day.
    const auto first = text.find('/');
    if (first == std::string_view::npos) return std::nullopt;
    const auto second = text.find('/', first + 1);
    if (second == std::string_view::npos) return std::nullopt;
    return assemble(parse_int_field(text.substr(second + 1)), parse_int_field(text.substr(0, first)),
                    parse_int_field(text.substr(first + 1, second - first - 1)));
}

}  // namespace bubblecast
