#include "gefl/io_util.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

#include "gefl/errors.hpp"

namespace gefl {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

long parse_long(std::string_view s) {
  s = trim(s);
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<double> parse_distribution(std::string_view s) {
  const char sep = s.find(':') != std::string_view::npos ? ':' : ',';
  std::vector<double> out;
  double total = 0.0;
  for (const auto& part : split(s, sep)) {
    double v = parse_double(part);
    if (v < 0.0 || !std::isfinite(v)) {
      throw ConfigError("distribution entries must be finite and >= 0");
    }
    out.push_back(v);
    total += v;
  }
  if (out.size() < 2 || total <= 0.0) {
    throw ConfigError("distribution needs >= 2 entries with positive mass");
  }
  for (double& v : out) v /= total;
  return out;
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) {
    long v = parse_long(part);
    if (v < 0) throw ConfigError("list entries must be >= 0");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace gefl
