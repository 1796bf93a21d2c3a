#ifndef GEFL_ERRORS_HPP
#define GEFL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gefl {

// Unreadable or malformed files. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid arguments, invalid configuration, degenerate inputs. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A feature draw asked for more entries than the pool holds. CLI exit code 3.
class PoolUnderflowError : public std::runtime_error {
 public:
  explicit PoolUnderflowError(const std::string& what)
      : std::runtime_error(what) {}
};

// Non-finite values, absolute-continuity violations and the like. CLI exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gefl

#endif  // GEFL_ERRORS_HPP
