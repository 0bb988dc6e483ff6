#include "qsmooth/gh_distribution.hpp"

#include <cmath>
#include <stdexcept>

#include "qsmooth/quadrature.hpp"
#include "qsmooth/special_functions.hpp"

namespace qsmooth {

double gh_transform(double z, const GhParams& gh) {
  const double tail = std::exp(0.5 * gh.h * z * z);
  if (gh.g > 0.0) {
    return std::expm1(gh.g * z) / gh.g * tail;
  }
  return z * tail;
}

double gh_quantile(double p, const GhParams& gh) {
  return gh_transform(inv_norm_cdf(p), gh);
}

GhMoments gh_moments(const GhParams& gh) {
  if (!(gh.g >= 0.0 && gh.h >= 0.0)) {
    throw std::domain_error("gh_moments: g and h must be nonnegative");
  }
  if (!(gh.h < 0.25)) {
    throw std::domain_error(
        "gh_moments: fourth moment exists only for h < 1/4");
  }

  // The widest integrand is W(z)^4 phi(z) ~ exp(-(1/2 - 2h) z^2 + 4 g z);
  // size the symmetric range from its peak location and width.
  const double s2 = 0.5 - 2.0 * gh.h;
  const double peak = 2.0 * gh.g / s2;
  const double width = 1.0 / std::sqrt(2.0 * s2);
  const double zmax = std::fabs(peak) + 20.0 * width + 10.0;

  constexpr double inv_sqrt_2pi = 0.3989422804014327;
  double raw[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  for (int k = 1; k <= 4; ++k) {
    // W(z)^k phi(z) with the exp factors fused, so the tail-growth term
    // cannot overflow before the normal density damps it.
    raw[k] = panel_integrate(
        [&](double z) {
          const double base = gh.g > 0.0 ? std::expm1(gh.g * z) / gh.g : z;
          double bk = base;
          for (int j = 1; j < k; ++j) bk *= base;
          return bk * inv_sqrt_2pi *
                 std::exp(0.5 * z * z * (k * gh.h - 1.0));
        },
        -zmax, zmax, 1e-11);
  }

  GhMoments m;
  m.mean = raw[1];
  m.variance = raw[2] - raw[1] * raw[1];
  const double mu3 =
      raw[3] - 3.0 * raw[1] * raw[2] + 2.0 * raw[1] * raw[1] * raw[1];
  const double mu4 = raw[4] - 4.0 * raw[1] * raw[3] +
                     6.0 * raw[1] * raw[1] * raw[2] -
                     3.0 * raw[1] * raw[1] * raw[1] * raw[1];
  const double sigma = std::sqrt(m.variance);
  m.skewness = mu3 / (sigma * sigma * sigma);
  m.kurtosis = mu4 / (m.variance * m.variance);
  return m;
}

}  // namespace qsmooth
