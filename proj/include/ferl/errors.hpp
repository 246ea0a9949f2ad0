#pragma once

#include <stdexcept>
#include <string>

namespace ferl {

/// Bad user-supplied configuration (missing scene object, dimension
/// mismatch in inputs, malformed file). CLI exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A documented invariant was violated at runtime. CLI exit code 2.
struct InvariantError : std::runtime_error {
  explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite values or failed numerical procedure. CLI exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ferl
