#pragma once

#include <optional>
#include <string>

namespace epinet {

/// Calendar date with proleptic-Gregorian serial-day arithmetic.
struct Date {
    int year = 1970;
    int month = 1;   // 1..12
    int day = 1;     // 1..31

    bool operator==(const Date&) const = default;
};

/// Days since 1970-01-01 (can be negative).
long days_from_civil(const Date& d);

/// Inverse of days_from_civil.
Date civil_from_days(long serial);

/// 0 = Sunday .. 6 = Saturday.
int day_of_week(const Date& d);

/// 1-based ordinal day within the year.
int day_of_year(const Date& d);

/// "YYYY-MM-DD".
std::string format_date(const Date& d);

/// Parses "YYYY-MM-DD". Returns nullopt on malformed input or an
/// impossible calendar date.
std::optional<Date> parse_iso_date(const std::string& text);

/// Parses a 6-digit "YYMMDD" token (two-digit years map to 2000+YY, the
/// era of the datasets this tool ingests). Returns nullopt if not 6 digits
/// or not a real date.
std::optional<Date> parse_yymmdd(const std::string& text);

}  // namespace epinet
