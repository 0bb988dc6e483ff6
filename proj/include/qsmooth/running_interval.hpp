#pragma once

#include <vector>

#include <Eigen/Core>

#include "qsmooth/dataset.hpp"

namespace qsmooth {

/// Indices j with |x_j - x_i| <= f * MADN(x). Membership is symmetric and
/// the window always contains i itself. Throws DegenerateScaleError when
/// MADN(x) is zero.
std::vector<Eigen::Index> neighborhood(
    const Eigen::Ref<const Eigen::VectorXd>& xs, Eigen::Index i, double f);

/// Stage-1 running-interval fit: theta_hat[i] is the Harrell-Davis q-th
/// quantile of the y values whose x falls in the window around x_i.
Eigen::VectorXd running_interval_fit(const PairedSample& sample, double q,
                                     double f);

}  // namespace qsmooth
