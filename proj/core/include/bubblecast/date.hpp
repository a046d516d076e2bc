#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bubblecast {

/// Calendar date (proleptic Gregorian). Comparable, ISO-8601 serializable.
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const Date&) const = default;

    /// Days since 1970-01-01 (negative before the epoch).
    std::int64_t to_days() const;

    static Date from_days(std::int64_t days);

    Date plus_days(std::int64_t n) const { return from_days(to_days() + n); }

    bool valid() const;

    std::string to_string() const;  // YYYY-MM-DD
};

/// Accepted textual date layouts.
enum class DateFormat { Iso8601, MonthDayYear };

/// Parses "YYYY-MM-DD" (Iso8601) or "MM/DD/YYYY" (MonthDayYear).
/// Returns nullopt on malformed or out-of-range input.
std::optional<Date> parse_date(std::string_view text, DateFormat format = DateFormat::Iso8601);

}  // namespace bubblecast
