#ifndef GEFL_IO_UTIL_HPP
#define GEFL_IO_UTIL_HPP

#include <string>
#include <string_view>
#include <vector>

namespace gefl {

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

// Strict parsers; throw ConfigError on malformed input.
double parse_double(std::string_view s);
long parse_long(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

// Comma-separated doubles ("0.9,0.1") or a ratio ("1:4"), normalized to sum 1.
std::vector<double> parse_distribution(std::string_view s);

// Comma-separated non-negative integers ("10,1").
std::vector<int> parse_int_list(std::string_view s);

}  // namespace gefl

#endif  // GEFL_IO_UTIL_HPP
