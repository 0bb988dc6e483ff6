#include "qsmooth/harrell_davis.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qsmooth/special_functions.hpp"

namespace qsmooth {

HdWeights hd_weights(Eigen::Index n, double q) {
  if (n < 1) {
    throw std::domain_error("hd_weights: n must be at least 1");
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("hd_weights: q must lie in (0, 1)");
  }

  HdWeights out;
  out.n = n;
  out.q = q;
  out.w.resize(n);

  const double a = (static_cast<double>(n) + 1.0) * q;
  const double b = (static_cast<double>(n) + 1.0) * (1.0 - q);

  // Cumulative differences telescope, so the weights sum to 1 exactly up
  // to the endpoint values I_0 = 0 and I_1 = 1.
  double prev = 0.0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    const double cur =
        (i == n) ? 1.0
                 : reg_inc_beta(static_cast<double>(i) / static_cast<double>(n),
                                a, b);
    out.w[i - 1] = std::max(cur - prev, 0.0);
    prev = cur;
  }
  return out;
}

double hd_quantile(const Eigen::Ref<const Eigen::VectorXd>& values, double q) {
  if (values.size() == 0) {
    throw std::domain_error("hd_quantile: empty input");
  }
  return hd_quantile(values, hd_weights(values.size(), q));
}

double hd_quantile(const Eigen::Ref<const Eigen::VectorXd>& values,
                   const HdWeights& weights) {
  if (values.size() == 0) {
    throw std::domain_error("hd_quantile: empty input");
  }
  if (values.size() != weights.n) {
    throw std::invalid_argument("hd_quantile: weights sized for different n");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  double est = 0.0;
  for (Eigen::Index i = 0; i < weights.n; ++i) {
    est += weights.w[i] * sorted[static_cast<std::size_t>(i)];
  }
  return est;
}

}  // namespace qsmooth
