#pragma once

#include <string>

namespace lumenloop {

// Shortest decimal text that parses back to exactly `value`.
std::string to_decimal(double value);

// Fixed notation with `digits` fraction digits ("61.20").
std::string to_fixed(double value, int digits = 2);

}  // namespace lumenloop
