#include "qsmooth/running_interval.hpp"

#include <cmath>
#include <unordered_map>
#include <vector>

#include "qsmooth/errors.hpp"
#include "qsmooth/harrell_davis.hpp"
#include "qsmooth/robust_stats.hpp"

namespace qsmooth {

namespace {

double window_radius(const Eigen::Ref<const Eigen::VectorXd>& xs, double f) {
  const RobustScale scale = robust_scale(xs);
  if (!(scale.madn > 0.0)) {
    throw DegenerateScaleError(
        "running-interval window undefined: MADN(x) is zero "
        "(at least half of the x values are tied)");
  }
  return f * scale.madn;
}

}  // namespace

std::vector<Eigen::Index> neighborhood(
    const Eigen::Ref<const Eigen::VectorXd>& xs, Eigen::Index i, double f) {
  if (i < 0 || i >= xs.size()) {
    throw std::invalid_argument("neighborhood: index out of range");
  }
  if (!(f > 0.0)) {
    throw std::invalid_argument("neighborhood: span f must be positive");
  }
  const double radius = window_radius(xs, f);

  std::vector<Eigen::Index> members;
  for (Eigen::Index j = 0; j < xs.size(); ++j) {
    if (std::fabs(xs[j] - xs[i]) <= radius) members.push_back(j);
  }
  return members;
}

Eigen::VectorXd running_interval_fit(const PairedSample& sample, double q,
                                     double f) {
  validate_sample(sample);
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("running_interval_fit: q must lie in (0, 1)");
  }
  if (!(f > 0.0)) {
    throw std::invalid_argument("running_interval_fit: span f must be positive");
  }

  const Eigen::Index n = sample.size();
  const double radius = window_radius(sample.x, f);

  // Windows repeat the same handful of sizes, so cache the HD weights by m.
  std::unordered_map<Eigen::Index, HdWeights> weight_cache;
  Eigen::VectorXd theta_hat(n);
  std::vector<double> window_y;
  window_y.reserve(static_cast<std::size_t>(n));

  for (Eigen::Index i = 0; i < n; ++i) {
    window_y.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::fabs(sample.x[j] - sample.x[i]) <= radius) {
        window_y.push_back(sample.y[j]);
      }
    }
    const Eigen::Index m = static_cast<Eigen::Index>(window_y.size());
    auto it = weight_cache.find(m);
    if (it == weight_cache.end()) {
      it = weight_cache.emplace(m, hd_weights(m, q)).first;
    }
    theta_hat[i] = hd_quantile(
        Eigen::Map<const Eigen::VectorXd>(window_y.data(), m), it->second);
  }
  return theta_hat;
}

}  // namespace qsmooth
