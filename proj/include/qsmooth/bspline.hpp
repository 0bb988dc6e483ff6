#pragma once

#include <vector>

#include <Eigen/Core>

namespace qsmooth {

/// Open (clamped) knot vector on [lo, hi]: degree+1 copies of each endpoint
/// around the strictly ascending interior knots. Interior knots must lie
/// strictly inside (lo, hi).
Eigen::VectorXd clamped_knot_vector(double lo, double hi,
                                    const std::vector<double>& interior,
                                    int degree);

/// All B-spline basis values at x for a nondecreasing knot vector, by the
/// Cox-de Boor recursion. The returned vector has knots.size() - degree - 1
/// entries, nonnegative and summing to 1. Throws std::domain_error when x
/// lies outside [knots.front(), knots.back()].
Eigen::VectorXd bspline_basis(const Eigen::Ref<const Eigen::VectorXd>& knots,
                              int degree, double x);

}  // namespace qsmooth
