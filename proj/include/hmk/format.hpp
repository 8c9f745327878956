#pragma once

#include <string>
#include <string_view>

namespace hmk {

/// Shortest decimal text that parses back to exactly `v`. Integral values keep
/// a trailing ".0" so that columns read as floating point ("1.0", "-3.0").
std::string format_double(double v);

/// Parses a full string as a double; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);

}  // namespace hmk
