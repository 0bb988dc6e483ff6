#pragma once

namespace qsmooth {

/// Parameters of the g-and-h transform of a standard normal variate:
/// g controls skewness, h controls tail heaviness. The moment of order k
/// exists iff h < 1/k.
struct GhParams {
  double g = 0.0;
  double h = 0.0;
};

struct GhMoments {
  double mean = 0.0;
  double variance = 1.0;
  double skewness = 0.0;  // third standardized moment
  double kurtosis = 3.0;  // fourth standardized moment (3 for the normal)
};

/// W(z) = ((exp(gz) - 1)/g) * exp(h z^2 / 2), or z * exp(h z^2 / 2) at g = 0.
/// Strictly increasing in z, with W(0) = 0.
double gh_transform(double z, const GhParams& gh);

/// Quantile function: gh_transform(inv_norm_cdf(p)). The transform is
/// monotone, so quantiles map through it directly.
double gh_quantile(double p, const GhParams& gh);

/// Mean, variance, skewness, kurtosis by adaptive quadrature of W(z)^k
/// against the standard normal density. Requires h < 1/4 so the fourth
/// moment exists; throws std::domain_error otherwise.
GhMoments gh_moments(const GhParams& gh);

}  // namespace qsmooth
