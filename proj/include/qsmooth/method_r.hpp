#pragma once

#include <Eigen/Core>

#include "qsmooth/dataset.hpp"

namespace qsmooth {

/// Per-observation conditional quantile fit. theta_hat holds the stage-1
/// running-interval values, theta_tilde the LOWESS re-smoothed ones; both
/// align index-for-index with the input sample.
struct QuantileFit {
  double q = 0.5;
  double span_f = 0.8;
  double span_xi = 0.75;
  Eigen::VectorXd theta_hat;
  Eigen::VectorXd theta_tilde;
};

/// Running-interval Harrell-Davis smoother re-smoothed by tri-cube weighted
/// least squares. The fitted regression line is the one connecting the
/// (x_j, theta_tilde_j) points.
QuantileFit method_r_fit(const PairedSample& sample, double q,
                         double f = 0.8, double xi = 0.75);

}  // namespace qsmooth
