#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "qsmooth/gh_distribution.hpp"
#include "qsmooth/variance_pattern.hpp"

namespace qsmooth {

/// Paired (x, y) observations, the unit of all fitting.
struct PairedSample {
  Eigen::VectorXd x;
  Eigen::VectorXd y;

  Eigen::Index size() const { return x.size(); }
};

/// Throws std::invalid_argument unless x and y have equal length >= 2
/// and every value is finite.
void validate_sample(const PairedSample& sample);

/// A simulated sample y_i = x_i + lambda(x_i) * W(z_i) with x_i, z_i
/// independent standard normal draws. The z draws are kept so y can be
/// reproduced bit-exactly from the stored pieces.
struct SyntheticDataset {
  PairedSample sample;
  Eigen::VectorXd z;
  GhParams gh;
  VariancePattern vp = VariancePattern::VP1;
  std::uint64_t seed = 0;
};

/// Deterministic given the seed. Throws std::invalid_argument for n < 2.
SyntheticDataset generate_dataset(Eigen::Index n, const GhParams& gh,
                                  VariancePattern vp, std::uint64_t seed);

/// True conditional quantile of Y given X = x under the simulation model:
/// theta_q(x) = x + lambda(x) * gh_quantile(q).
double true_conditional_quantile(double x, double q, const GhParams& gh,
                                 VariancePattern vp);

}  // namespace qsmooth
