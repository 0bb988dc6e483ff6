#pragma once

#include <Eigen/Core>

namespace qsmooth {

/// Tri-cube weights centered on x_j: retain the ceil(xi * n) points with the
/// smallest |x_i - x_j| (ties broken by lower index), normalize distances by
/// the largest retained one, and weight (1 - Q^3)^3 for Q < 1, else 0.
/// Non-retained points get weight 0. If the largest retained distance is 0,
/// every retained point gets weight 1.
Eigen::VectorXd tricube_weights(const Eigen::Ref<const Eigen::VectorXd>& xs,
                                Eigen::Index j, double xi);

/// One non-iterated LOWESS pass: for each j, fit a tri-cube weighted least
/// squares line to (x, theta_hat) and evaluate it at x_j. When the weighted
/// design is rank deficient (all retained x equal) the weighted mean of
/// theta_hat is used instead.
Eigen::VectorXd lowess_resmooth(const Eigen::Ref<const Eigen::VectorXd>& xs,
                                const Eigen::Ref<const Eigen::VectorXd>& theta_hat,
                                double xi);

}  // namespace qsmooth
