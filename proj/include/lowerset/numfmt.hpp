#pragma once

#include <string>

namespace lowerset {

/// Shortest decimal form that round-trips the double exactly.
std::string format_double(double x);

/// Scientific form with a fixed mantissa width, e.g. 5.0000e-01.
std::string format_scientific(double x, int digits = 4);

}  // namespace lowerset
