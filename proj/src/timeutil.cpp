#include "circlelink/timeutil.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "circlelink/errors.hpp"

namespace circlelink {

// Howard Hinnant's public-domain civil-date algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);           // [0, 399]
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1; // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;          // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

bool is_leap_year(int y) {
  return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

int days_in_month(int y, unsigned m) {
  static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap_year(y)) return 29;
  return lengths[m - 1];
}

std::int64_t month_index(std::int64_t epoch_seconds) {
  // floor division so pre-1970 timestamps land in the right day
  std::int64_t days = epoch_seconds / kSecondsPerDay;
  if (epoch_seconds % kSecondsPerDay < 0) --days;
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  return static_cast<std::int64_t>(y) * 12 + (m - 1);
}

int days_in_month_of_index(std::int64_t month_idx) {
  std::int64_t y = month_idx / 12;
  std::int64_t m = month_idx % 12;
  if (m < 0) {
    m += 12;
    --y;
  }
  return days_in_month(static_cast<int>(y), static_cast<unsigned>(m + 1));
}

namespace {

bool all_epoch_digits(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::int64_t parse_timestamp(const std::string& text) {
  std::string s = text;
  // trim surrounding whitespace
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ParseError("empty timestamp");

  if (all_epoch_digits(s)) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end == nullptr || *end != '\0')
      throw ParseError("bad epoch timestamp '" + text + "'");
    return static_cast<std::int64_t>(v);
  }

  int y = 0, hh = 0, mi = 0, ss = 0;
  unsigned mo = 0, dd = 0;
  int used = 0;
  if (std::sscanf(s.c_str(), "%4d-%2u-%2u%n", &y, &mo, &dd, &used) != 3 || used != 10)
    throw ParseError("bad timestamp '" + text + "'");
  std::string rest = s.substr(10);
  if (!rest.empty()) {
    if (rest[0] != 'T' && rest[0] != ' ')
      throw ParseError("bad timestamp '" + text + "'");
    int used2 = 0;
    if (std::sscanf(rest.c_str() + 1, "%2d:%2d:%2d%n", &hh, &mi, &ss, &used2) != 3 || used2 != 8)
      throw ParseError("bad timestamp '" + text + "'");
    std::string tail = rest.substr(1 + used2);
    if (!tail.empty() && tail != "Z")
      throw ParseError("bad timestamp '" + text + "'");
  }
  if (mo < 1 || mo > 12 || dd < 1 ||
      static_cast<int>(dd) > days_in_month(y, mo) || hh < 0 || hh > 23 ||
      mi < 0 || mi > 59 || ss < 0 || ss > 60)
    throw ParseError("timestamp out of range '" + text + "'");
  return days_from_civil(y, mo, dd) * kSecondsPerDay + hh * 3600 + mi * 60 + ss;
}

std::string format_timestamp(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / kSecondsPerDay;
  std::int64_t rem = epoch_seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", y, m, d,
                static_cast<long long>(rem / 3600),
                static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

}  // namespace circlelink
