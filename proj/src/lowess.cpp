#include "qsmooth/lowess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qsmooth {

Eigen::VectorXd tricube_weights(const Eigen::Ref<const Eigen::VectorXd>& xs,
                                Eigen::Index j, double xi) {
  const Eigen::Index n = xs.size();
  if (n < 2) {
    throw std::invalid_argument("tricube_weights: need at least two points");
  }
  if (j < 0 || j >= n) {
    throw std::invalid_argument("tricube_weights: index out of range");
  }
  if (!(xi > 0.0 && xi <= 1.0)) {
    throw std::domain_error("tricube_weights: xi must lie in (0, 1]");
  }

  // ceil(xi*n), guarded so an integer product cannot round up twice
  const double target = xi * static_cast<double>(n);
  const Eigen::Index retained = std::max<Eigen::Index>(
      1, std::min<Eigen::Index>(
             n, static_cast<Eigen::Index>(std::ceil(target - 1e-9))));

  Eigen::VectorXd delta = (xs.array() - xs[j]).abs();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::nth_element(order.begin(), order.begin() + (retained - 1), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     if (delta[a] != delta[b]) return delta[a] < delta[b];
                     return a < b;  // ties keep the lower index
                   });
  const double delta_m = delta[order[static_cast<std::size_t>(retained - 1)]];

  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  if (delta_m == 0.0) {
    // Window degenerated to duplicated x: uniform average over the retained.
    for (Eigen::Index k = 0; k < retained; ++k) {
      w[order[static_cast<std::size_t>(k)]] = 1.0;
    }
    return w;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = delta[i] / delta_m;
    if (t < 1.0) {
      const double u = 1.0 - t * t * t;
      w[i] = u * u * u;
    }
  }
  return w;
}

Eigen::VectorXd lowess_resmooth(const Eigen::Ref<const Eigen::VectorXd>& xs,
                                const Eigen::Ref<const Eigen::VectorXd>& theta_hat,
                                double xi) {
  const Eigen::Index n = xs.size();
  if (theta_hat.size() != n) {
    throw std::invalid_argument("lowess_resmooth: length mismatch");
  }
  if (n < 2) {
    throw std::invalid_argument("lowess_resmooth: need at least two points");
  }

  Eigen::VectorXd theta_tilde(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd w = tricube_weights(xs, j, xi);

    // Weighted least squares in coordinates centered at x_j; the intercept
    // of the centered fit is the prediction at x_j.
    const Eigen::ArrayXd u = xs.array() - xs[j];
    const double s0 = w.sum();
    const double s1 = (w.array() * u).sum();
    const double s2 = (w.array() * u * u).sum();
    const double t0 = (w.array() * theta_hat.array()).sum();
    const double t1 = (w.array() * u * theta_hat.array()).sum();

    const double det = s0 * s2 - s1 * s1;
    if (det <= 1e-12 * s0 * s2 || s2 == 0.0) {
      // Slope unidentifiable (all retained x equal): weighted mean.
      theta_tilde[j] = t0 / s0;
    } else {
      const double slope = (s0 * t1 - s1 * t0) / det;
      theta_tilde[j] = (t0 - slope * s1) / s0;
    }
  }
  return theta_tilde;
}

}  // namespace qsmooth
