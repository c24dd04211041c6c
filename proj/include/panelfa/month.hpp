#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace panelfa {

// Calendar month. Ordering is chronological; index() is months since 0-01.
struct Month {
  int year = 0;
  int month = 1;  // 1..12

  int index() const { return year * 12 + (month - 1); }

  static Month from_index(int idx) {
    Month m;
    m.year = idx / 12;
    m.month = idx % 12 + 1;
    return m;
  }

  Month next() const { return from_index(index() + 1); }

  auto operator<=>(const Month&) const = default;

  // "YYYY-MM"
  std::string to_string() const;

  // "YYYY-MM", e.g. "2009-09". Throws Error on malformed input.
  static Month parse_iso(std::string_view s);

  // "M/D/YYYY" as used by the panel CSV date column; the day is ignored.
  static Month parse_us(std::string_view s);
};

inline int months_between(Month from, Month to) {
  return to.index() - from.index();
}

}  // namespace panelfa
