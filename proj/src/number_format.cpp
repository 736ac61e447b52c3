#include "impact_lab/number_format.hpp"

#include <array>
#include <charconv>

namespace impact_lab {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

}  // namespace impact_lab
