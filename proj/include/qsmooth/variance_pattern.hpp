#pragma once

#include <stdexcept>
#include <string>

namespace qsmooth {

/// Heteroscedasticity pattern lambda(x) scaling the error term:
/// VP1: 1, VP2: |x| + 1, VP3: 1 / (|x| + 1). Always positive.
enum class VariancePattern { VP1 = 1, VP2 = 2, VP3 = 3 };

inline double lambda_at(VariancePattern vp, double x) {
  switch (vp) {
    case VariancePattern::VP1: return 1.0;
    case VariancePattern::VP2: return std::abs(x) + 1.0;
    case VariancePattern::VP3: return 1.0 / (std::abs(x) + 1.0);
  }
  throw std::invalid_argument("unknown variance pattern");
}

inline VariancePattern variance_pattern_from_int(int id) {
  if (id < 1 || id > 3) {
    throw std::invalid_argument("variance pattern id must be 1, 2 or 3");
  }
  return static_cast<VariancePattern>(id);
}

inline int to_int(VariancePattern vp) { return static_cast<int>(vp); }

inline std::string to_string(VariancePattern vp) {
  return "VP" + std::to_string(to_int(vp));
}

}  // namespace qsmooth
