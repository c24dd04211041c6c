#include "panelfa/month.hpp"

#include <charconv>
#include <cstdio>

#include "panelfa/errors.hpp"

namespace panelfa {
namespace {

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string Month::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

Month Month::parse_iso(std::string_view s) {
  auto dash = s.find('-');
  if (dash == std::string_view::npos || dash + 1 >= s.size())
    throw Error("invalid month '" + std::string(s) + "' (expected YYYY-MM)");
  Month m;
  m.year = parse_int(s.substr(0, dash), "year");
  m.month = parse_int(s.substr(dash + 1), "month");
  if (m.month < 1 || m.month > 12)
    throw Error("month out of range in '" + std::string(s) + "'");
  return m;
}

Month Month::parse_us(std::string_view s) {
  auto first = s.find('/');
  auto second = first == std::string_view::npos
                    ? std::string_view::npos
                    : s.find('/', first + 1);
  if (second == std::string_view::npos || second + 1 >= s.size())
    throw Error("invalid date '" + std::string(s) + "' (expected M/D/YYYY)");
  Month m;
  m.month = parse_int(s.substr(0, first), "month");
  parse_int(s.substr(first + 1, second - first - 1), "day");
  m.year = parse_int(s.substr(second + 1), "year");
  if (m.month < 1 || m.month > 12)
    throw Error("month out of range in '" + std::string(s) + "'");
  return m;
}

}  // namespace panelfa
