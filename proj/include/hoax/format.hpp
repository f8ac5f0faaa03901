#pragma once

#include <string>

namespace hoax {

/// Shortest decimal that reads back to the same double, capped at 12
/// significant digits. Negative zero prints as "0".
std::string format_double(double value);

/// Fixed-point with `digits` fractional digits ("0.692000").
std::string format_fixed(double value, int digits);

}  // namespace hoax
