#ifndef CSGEMOS_DATE_HPP
#define CSGEMOS_DATE_HPP

#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>

#include "csgemos/errors.hpp"

namespace csgemos {

// Calendar date without time zone, stored as days since 1970-01-01.
// Accumulation-period conventions (e.g. 0600 UTC) are metadata handled
// by the caller, never by this type.
class Date {
 public:
  Date() = default;
  explicit Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

  static Date from_ymd(int year, unsigned month, unsigned day) {
    if (month < 1 || month > 12 || day < 1 || day > 31)
      throw DataError("invalid calendar date");
    return Date(static_cast<std::int32_t>(days_from_civil(year, month, day)));
  }

  // Parses strict ISO-8601 "YYYY-MM-DD".
  static Date parse(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char trail = '\0';
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &trail) != 3)
      throw DataError("cannot parse date '" + text + "'");
    Date out = from_ymd(y, m, d);
    if (out.to_string() != text)
      throw DataError("cannot parse date '" + text + "'");
    return out;
  }

  std::int32_t days() const { return days_; }

  std::string to_string() const {
    auto [y, m, d] = civil_from_days(days_);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return std::string(buf);
  }

  Date operator+(int n) const { return Date(days_ + n); }
  Date operator-(int n) const { return Date(days_ - n); }
  int operator-(const Date& other) const { return days_ - other.days_; }
  auto operator<=>(const Date&) const = default;

 private:
  // Howard Hinnant's civil-date algorithms.
  static std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
  }

  struct Civil {
    int year;
    unsigned month;
    unsigned day;
  };

  static Civil civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {static_cast<int>(y + (m <= 2)), m, d};
  }

  std::int32_t days_ = 0;
};

}  // namespace csgemos

#endif  // CSGEMOS_DATE_HPP
