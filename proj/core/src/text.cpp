#include "lumenloop/text.hpp"

#include <charconv>
#include <cstdio>

namespace lumenloop {

std::string to_decimal(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string to_fixed(double value, int digits) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

}  // namespace lumenloop
