#pragma once

#include <stdexcept>
#include <string>

namespace destripe {

/// Shape/size preconditions violated (e.g. vertical differences of a 1-row matrix).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Invalid solver or model configuration (non-positive weights, step outside range, ...).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A documented mathematical contract was violated at runtime. Indicates a bug
/// in the caller or in the solver itself, never bad user input.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// File I/O and format failures.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace destripe
