#pragma once

#include <stdexcept>
#include <string>

namespace gatelab {

/// Bad input: out-of-range parameter, unknown name, malformed config.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace detail
}  // namespace gatelab
