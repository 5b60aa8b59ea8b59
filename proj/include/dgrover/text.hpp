#pragma once

#include <string>
#include <string_view>

namespace dgrover {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Strict full-string parse; throws ParseError.
double parse_double(std::string_view text);

}  // namespace dgrover
