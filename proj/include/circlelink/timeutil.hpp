#pragma once

#include <cstdint>
#include <string>

namespace circlelink {

inline constexpr std::int64_t kSecondsPerDay = 86400;
// Frequencies are expressed per 365-day year throughout.
inline constexpr std::int64_t kSecondsPerYear = 365 * kSecondsPerDay;

/// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int y, unsigned m, unsigned d);

/// Inverse of days_from_civil.
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);

bool is_leap_year(int y);
int days_in_month(int y, unsigned m);

/// Zero-based calendar month counter (year * 12 + month - 1) of an epoch
/// timestamp; used for activity profiles.
std::int64_t month_index(std::int64_t epoch_seconds);

int days_in_month_of_index(std::int64_t month_idx);

/// Accepts epoch seconds ("1425290400", optional sign) or ISO-8601 UTC
/// ("2015-03-02", "2015-03-02T10:00:00", "2015-03-02 10:00:00", optional
/// trailing 'Z').  Throws ParseError on anything else.
std::int64_t parse_timestamp(const std::string& text);

/// Canonical form: "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(std::int64_t epoch_seconds);

}  // namespace circlelink
