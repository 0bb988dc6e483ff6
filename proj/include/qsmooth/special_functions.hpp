#pragma once

namespace qsmooth {

/// Natural log of the complete beta function B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta function I_x(a, b).
///
/// Continued-fraction evaluation with the usual symmetry switch at
/// x > (a+1)/(a+b+2). Absolute error below 1e-12 over the domain.
/// Throws std::domain_error for x outside [0, 1] or nonpositive a, b.
double reg_inc_beta(double x, double a, double b);

/// Standard normal CDF.
double norm_cdf(double x);

/// Inverse of the standard normal CDF for p in (0, 1).
///
/// Rational initial approximation refined by one Halley step on the CDF;
/// |norm_cdf(result) - p| <= 1e-9. Exactly odd: inv(1-p) == -inv(p)
/// whenever 1-p is representable. Throws std::domain_error at p in {0, 1}.
double inv_norm_cdf(double p);

}  // namespace qsmooth
