#include "lowerset/numfmt.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

namespace lowerset {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string format_scientific(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits, x);
  return std::string(buf);
}

}  // namespace lowerset
