#include "qsmooth/quantile_spline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>

#include "qsmooth/bspline.hpp"
#include "qsmooth/robust_stats.hpp"
#include "qsmooth/simplex.hpp"

namespace qsmooth {

namespace {

Eigen::MatrixXd design_matrix(const Eigen::Ref<const Eigen::VectorXd>& xs,
                              const Eigen::VectorXd& knots, int degree,
                              Eigen::Index p) {
  Eigen::MatrixXd design(xs.size(), p);
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    design.row(i) = bspline_basis(knots, degree, xs[i]).transpose();
  }
  return design;
}

// Linear-interpolation sample quantile of a sorted vector.
double sorted_quantile(const std::vector<double>& sorted, double level) {
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

SplineModel fit_quantile_spline(const PairedSample& sample, double q,
                                const std::vector<double>& interior_knots) {
  validate_sample(sample);
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("fit_quantile_spline: q must lie in (0, 1)");
  }

  const Eigen::Index n = sample.size();
  const int degree = n == 2 ? 1 : 2;  // two points only support a line
  if (degree == 1 && !interior_knots.empty()) {
    throw std::invalid_argument(
        "fit_quantile_spline: interior knots need at least three points");
  }

  const double lo = sample.x.minCoeff();
  const double hi = sample.x.maxCoeff();
  if (!(lo < hi)) {
    throw std::invalid_argument("fit_quantile_spline: x values all equal");
  }

  SplineModel model;
  model.degree = degree;
  model.interior_knots = interior_knots;
  model.q = q;
  model.knots = clamped_knot_vector(lo, hi, interior_knots, degree);

  const Eigen::Index p =
      static_cast<Eigen::Index>(interior_knots.size()) + degree + 1;
  if (p > n) {
    throw std::invalid_argument(
        "fit_quantile_spline: basis dimension exceeds sample size");
  }

  const Eigen::MatrixXd design = design_matrix(sample.x, model.knots, degree, p);
  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    model.rank_deficient = qr.rank() < p;
  }

  // min q 1'u + (1-q) 1'v  s.t.  B(c+ - c-) + u - v = y, all variables >= 0.
  const Eigen::Index cols = 2 * p + 2 * n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, cols);
  a.block(0, 0, n, p) = design;
  a.block(0, p, n, p) = -design;
  a.block(0, 2 * p, n, n) = Eigen::MatrixXd::Identity(n, n);
  a.block(0, 2 * p + n, n, n) = -Eigen::MatrixXd::Identity(n, n);

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  cost.segment(2 * p, n).setConstant(q);
  cost.segment(2 * p + n, n).setConstant(1.0 - q);

  const SimplexResult lp = simplex_solve(a, sample.y, cost);
  if (!lp.ok()) {
    throw std::runtime_error(
        "fit_quantile_spline: interior LP solve failed unexpectedly");
  }

  model.coeffs = lp.x.segment(0, p) - lp.x.segment(p, p);
  // The pinball objective is nonnegative; round solver noise up to zero.
  model.objective = std::max(0.0, lp.objective);
  return model;
}

Eigen::VectorXd spline_predict(const SplineModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& xs) {
  Eigen::VectorXd fitted(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    fitted[i] = bspline_basis(model.knots, model.degree, xs[i]).dot(model.coeffs);
  }
  return fitted;
}

double sic_score(double objective, Eigen::Index n, Eigen::Index p) {
  if (!(n > p && p >= 1)) {
    throw std::invalid_argument("sic_score: need n > p >= 1");
  }
  if (objective < 0.0) {
    throw std::domain_error("sic_score: negative objective");
  }
  if (objective == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  const double nd = static_cast<double>(n);
  return std::log(objective / nd) +
         0.5 * static_cast<double>(p) * std::log(nd) / nd;
}

SplineModel fit_auto(const PairedSample& sample, double q) {
  validate_sample(sample);
  const Eigen::Index n = sample.size();
  if (n < 10) {
    throw std::invalid_argument("fit_auto: need at least 10 observations");
  }

  std::vector<double> sorted_x(sample.x.begin(), sample.x.end());
  std::sort(sorted_x.begin(), sorted_x.end());
  const double lo = sorted_x.front();
  const double hi = sorted_x.back();

  const Eigen::Index k_max = std::min<Eigen::Index>(10, n / 4);

  SplineModel best;
  double best_score = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (Eigen::Index k = 0; k <= k_max; ++k) {
    const Eigen::Index p = k + 3;
    if (p >= n) break;

    // Interior knots at equally spaced x-quantiles; skip counts whose
    // knots collide (possible under heavily tied designs).
    std::vector<double> knots;
    knots.reserve(static_cast<std::size_t>(k));
    bool valid = true;
    for (Eigen::Index j = 1; j <= k; ++j) {
      const double t = sorted_quantile(
          sorted_x, static_cast<double>(j) / static_cast<double>(k + 1));
      if (!(t > lo && t < hi) || (!knots.empty() && t <= knots.back())) {
        valid = false;
        break;
      }
      knots.push_back(t);
    }
    if (!valid) continue;

    SplineModel model = fit_quantile_spline(sample, q, knots);
    const double score = sic_score(model.objective, n, p);
    if (!have_best || score < best_score) {
      best = std::move(model);
      best_score = score;
      have_best = true;
    }
  }

  if (!have_best) {
    throw std::runtime_error("fit_auto: no valid knot configuration");
  }
  return best;
}

}  // namespace qsmooth
