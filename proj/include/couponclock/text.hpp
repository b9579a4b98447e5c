#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace couponclock {

// Fixed-point decimal rendering, round half away from zero, locale
// independent. decimals in 0..9.
std::string format_fixed(double value, int decimals);

// Strict locale-independent parsing of a whole trimmed field.
double parse_double_field(std::string_view text);
long parse_long_field(std::string_view text);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_fields(std::string_view line, char sep);

}  // namespace couponclock
