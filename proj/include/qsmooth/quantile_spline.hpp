#pragma once

#include <vector>

#include <Eigen/Core>

#include "qsmooth/dataset.hpp"

namespace qsmooth {

/// Quantile smoothing spline: piecewise-quadratic B-spline whose
/// coefficients minimize the pinball objective sum rho_q(y_i - w(x_i)).
struct SplineModel {
  int degree = 2;
  std::vector<double> interior_knots;
  Eigen::VectorXd knots;   // full clamped knot vector
  Eigen::VectorXd coeffs;  // basis dimension = interior_knots + degree + 1
  double q = 0.5;
  double objective = 0.0;  // pinball objective at the optimum
  bool rank_deficient = false;  // basis columns collinear on the data
};

/// Exact pinball-objective fit via linear programming
/// (min q 1'u + (1-q) 1'v subject to B c + u - v = y, u, v >= 0).
/// Degree is 2 except for n == 2, which reduces to the interpolating line.
/// Requires basis dimension <= n and interior knots strictly ascending and
/// strictly inside the x-range.
SplineModel fit_quantile_spline(const PairedSample& sample, double q,
                                const std::vector<double>& interior_knots);

/// Evaluate the fitted spline at each of xs (must lie within the knot range).
Eigen::VectorXd spline_predict(const SplineModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& xs);

/// Schwarz-type information criterion, lower is better:
/// log(objective/n) + (p/2) log(n)/n. A zero objective maps to -infinity
/// so a perfect fit wins at the smallest dimension.
double sic_score(double objective, Eigen::Index n, Eigen::Index p);

/// Fit with interior-knot counts k in {0, ..., min(10, n/4)}, knots at
/// equally spaced x-quantiles, and keep the SIC-minimizing model (ties go
/// to the smaller k). Requires n >= 10.
SplineModel fit_auto(const PairedSample& sample, double q);

}  // namespace qsmooth
