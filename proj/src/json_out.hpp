#pragma once

#include <string>

#include "json.hpp"

namespace hoax::detail {

using ordered_json = nlohmann::ordered_json;

/// Pretty-prints with two-space indentation, keeping insertion order and
/// formatting every float through format_double.
std::string dump_json(const ordered_json& value);

/// Marks a float that must print as fixed-point with six fractional digits.
ordered_json ratio6(double value);

}  // namespace hoax::detail
