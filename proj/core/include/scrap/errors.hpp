#pragma once

#include <stdexcept>
#include <string>

namespace scrap {

/// Invalid or inconsistent input parameters.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Integration or propagation broke down. `where()` is the scaled time
/// (or depth) at which the failure was detected.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double where)
      : std::runtime_error(what), where_(where) {}

  double where() const noexcept { return where_; }

private:
  double where_;
};

}  // namespace scrap
