#pragma once

#include <Eigen/Core>

namespace qsmooth {

/// Location/scale summary: sample median, MAD, and MADN = MAD / 0.6745
/// (consistent with the standard deviation under normality).
struct RobustScale {
  double median = 0.0;
  double mad = 0.0;
  double madn = 0.0;
};

/// Sample median; mean of the two central order statistics for even n.
/// Throws std::domain_error on empty input.
double median(const Eigen::Ref<const Eigen::VectorXd>& values);

RobustScale robust_scale(const Eigen::Ref<const Eigen::VectorXd>& values);

/// Check-function loss: u*q for u >= 0, u*(q-1) for u < 0.
double pinball(double u, double q);

/// Kendall's tau-b (tie-corrected) rank correlation, O(n log n).
///
/// Throws std::invalid_argument on length mismatch or n < 2 and
/// UndefinedCorrelationError when either variable is entirely tied.
double kendall_tau(const Eigen::Ref<const Eigen::VectorXd>& xs,
                   const Eigen::Ref<const Eigen::VectorXd>& ys);

}  // namespace qsmooth
