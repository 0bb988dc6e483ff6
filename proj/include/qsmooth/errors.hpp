#pragma once

#include <stdexcept>
#include <string>

namespace qsmooth {

/// Thrown when a windowed fit is undefined because MADN(x) is zero
/// (at least half of the x values are tied).
class DegenerateScaleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a rank correlation is undefined (all values tied in one
/// variable, so the tie-corrected denominator vanishes).
class UndefinedCorrelationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsmooth
