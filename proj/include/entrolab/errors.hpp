#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace entrolab {

// Rejected input: bad parameters, violated preconditions, malformed files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation produced a non-finite intermediate or failed to converge.
// Results are never silently clamped; callers get this instead.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericError(std::string(what) + ": non-finite value");
  }
  return v;
}

}  // namespace entrolab
