#pragma once

#include <Eigen/Core>

namespace qsmooth {

/// Order-statistic weights of the Harrell-Davis quantile estimator:
/// w_i = I_{i/n}(a, b) - I_{(i-1)/n}(a, b) with a = (n+1)q, b = (n+1)(1-q).
/// Weights are nonnegative and sum to 1.
struct HdWeights {
  Eigen::Index n = 0;
  double q = 0.5;
  Eigen::VectorXd w;
};

/// Throws std::domain_error for n < 1 or q outside (0, 1).
HdWeights hd_weights(Eigen::Index n, double q);

/// Harrell-Davis estimate of the q-th quantile: the HdWeights-weighted
/// average of the ascending order statistics. Throws on empty input.
double hd_quantile(const Eigen::Ref<const Eigen::VectorXd>& values, double q);

/// Same estimate with precomputed weights (weights.n must equal values.size()).
double hd_quantile(const Eigen::Ref<const Eigen::VectorXd>& values,
                   const HdWeights& weights);

}  // namespace qsmooth
