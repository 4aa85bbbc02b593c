#pragma once
// ISO-8601 calendar dates, full (YYYY-MM-DD) or reduced precision.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace ontorec {

namespace detail {
inline std::optional<int> parse_digits(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}
}  // namespace detail

enum class DatePrecision { Year, Month, Day };

struct PartialDate {
  int year = 0;
  int month = 0;  // 0 when precision is Year
  int day = 0;    // 0 unless precision is Day
  DatePrecision precision = DatePrecision::Day;

  std::string iso() const {
    char buf[40];
    switch (precision) {
      case DatePrecision::Year: std::snprintf(buf, sizeof buf, "%04d", year); break;
      case DatePrecision::Month: std::snprintf(buf, sizeof buf, "%04d-%02d", year, month); break;
      case DatePrecision::Day: std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day); break;
    }
    return buf;
  }
};

inline bool valid_calendar_date(int y, int m, int d) {
  using namespace std::chrono;
  return year_month_day{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}}.ok();
}

inline std::optional<PartialDate> parse_partial_date(std::string_view s) {
  PartialDate out;
  if (s.size() != 4 && s.size() != 7 && s.size() != 10) return std::nullopt;
  auto y = detail::parse_digits(s.substr(0, 4));
  if (!y) return std::nullopt;
  out.year = *y;
  out.precision = DatePrecision::Year;
  if (s.size() >= 7) {
    if (s[4] != '-') return std::nullopt;
    auto m = detail::parse_digits(s.substr(5, 2));
    if (!m || *m < 1 || *m > 12) return std::nullopt;
    out.month = *m;
    out.precision = DatePrecision::Month;
  }
  if (s.size() == 10) {
    if (s[7] != '-') return std::nullopt;
    auto d = detail::parse_digits(s.substr(8, 2));
    if (!d || !valid_calendar_date(out.year, out.month, *d)) return std::nullopt;
    out.day = *d;
    out.precision = DatePrecision::Day;
  }
  return out;
}

// Full YYYY-MM-DD only.
inline bool is_iso_date(std::string_view s) {
  auto d = parse_partial_date(s);
  return d && d->precision == DatePrecision::Day;
}

}  // namespace ontorec
