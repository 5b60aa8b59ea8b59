#include "dgrover/text.hpp"

#include <array>
#include <charconv>
#include <string>

#include "dgrover/errors.hpp"

namespace dgrover {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of −0
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParseError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace dgrover
