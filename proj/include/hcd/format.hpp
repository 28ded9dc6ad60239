#pragma once

#include <string>
#include <vector>

namespace hcd {

/// Shortest round-trippable text for a double: 17 significant digits.
std::string format_number(double value);

/// Strict parse: the whole string must be a number.
double parse_double(const std::string& text);
long long parse_integer(const std::string& text);

/// Comma separated list of numbers, e.g. "1e-7,1e-8".
std::vector<double> parse_double_list(const std::string& text);
std::vector<long long> parse_integer_list(const std::string& text);

std::vector<std::string> split(const std::string& text, char sep);
std::string trim(const std::string& text);

}  // namespace hcd
