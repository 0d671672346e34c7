#include <doctest.h>

#include <chrono>

#include "circlelink/errors.hpp"
#include "circlelink/rng.hpp"
#include "circlelink/timeutil.hpp"

using namespace circlelink;

TEST_CASE("days_from_civil matches std::chrono over six decades") {
  // independent oracle: the C++20 calendar
  for (std::int64_t day = days_from_civil(1968, 1, 1);
       day <= days_from_civil(2030, 12, 31); ++day) {
    int y;
    unsigned m, d;
    civil_from_days(day, y, m, d);
    std::chrono::year_month_day ymd{
        std::chrono::sys_days{std::chrono::days{day}}};
    CHECK(static_cast<int>(ymd.year()) == y);
    CHECK(static_cast<unsigned>(ymd.month()) == m);
    CHECK(static_cast<unsigned>(ymd.day()) == d);
    CHECK(days_from_civil(y, m, d) == day);
  }
}

TEST_CASE("leap years and month lengths") {
  CHECK(is_leap_year(2000));
  CHECK(is_leap_year(2024));
  CHECK_FALSE(is_leap_year(1900));
  CHECK_FALSE(is_leap_year(2023));
  CHECK(days_in_month(2024, 2) == 29);
  CHECK(days_in_month(2023, 2) == 28);
  CHECK(days_in_month(2023, 12) == 31);
  CHECK(days_in_month(2023, 4) == 30);
}

TEST_CASE("month_index counts calendar months") {
  auto jan31 = parse_timestamp("2024-01-31T23:59:59Z");
  auto feb01 = parse_timestamp("2024-02-01T00:00:00Z");
  CHECK(month_index(feb01) == month_index(jan31) + 1);
  CHECK(month_index(parse_timestamp("2025-01-01")) ==
        month_index(parse_timestamp("2024-01-01")) + 12);
  CHECK(days_in_month_of_index(month_index(feb01)) == 29);
}

TEST_CASE("parse_timestamp accepts the documented forms") {
  CHECK(parse_timestamp("0") == 0);
  CHECK(parse_timestamp("946684800") == 946684800);   // 2000-01-01T00:00:00Z
  CHECK(parse_timestamp("-86400") == -86400);
  CHECK(parse_timestamp("1970-01-01") == 0);
  CHECK(parse_timestamp("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_timestamp("2000-01-01T00:00:00Z") == 946684800);
  CHECK(parse_timestamp("2015-03-02 10:00:00") ==
        parse_timestamp("2015-03-02T10:00:00Z"));
  CHECK(parse_timestamp("2024-02-29") - parse_timestamp("2024-02-28") == 86400);
}

TEST_CASE("parse_timestamp rejects malformed input") {
  for (const char* bad :
       {"", "abc", "2015-13-01", "2015-00-10", "2015-02-30", "2023-02-29",
        "2015-03-02T25:00:00", "2015-03-02T10:61:00", "2015-03-02T10:00:61",
        "2015-03-02T10:00:00junk", "2015-03-02junk", "12x", "2015/03/02",
        "2015-3-2", "--5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_timestamp(bad), ParseError);
  }
}

TEST_CASE("format/parse round-trip on random timestamps") {
  Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    // ~1950..2090
    auto ts = static_cast<std::int64_t>(rng.uniform(-6e8, 3.8e9));
    auto text = format_timestamp(ts);
    CHECK(parse_timestamp(text) == ts);
    CHECK(format_timestamp(parse_timestamp(text)) == text);
  }
  CHECK(format_timestamp(0) == "1970-01-01T00:00:00Z");
  CHECK(format_timestamp(946684800) == "2000-01-01T00:00:00Z");
}
