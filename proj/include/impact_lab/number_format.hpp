#pragma once

#include <string>

namespace impact_lab {

/// Shortest decimal string that parses back to exactly `value`. Locale
/// independent.
std::string format_double(double value);

}  // namespace impact_lab
