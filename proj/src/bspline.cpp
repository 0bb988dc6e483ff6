#include "qsmooth/bspline.hpp"

#include <stdexcept>

namespace qsmooth {

Eigen::VectorXd clamped_knot_vector(double lo, double hi,
                                    const std::vector<double>& interior,
                                    int degree) {
  if (!(lo < hi)) {
    throw std::invalid_argument("clamped_knot_vector: need lo < hi");
  }
  if (degree < 0) {
    throw std::invalid_argument("clamped_knot_vector: negative degree");
  }
  double prev = lo;
  for (double t : interior) {
    if (!(t > prev && t < hi) || (prev != lo && t <= prev)) {
      throw std::invalid_argument(
          "clamped_knot_vector: interior knots must be strictly ascending "
          "and strictly inside (lo, hi)");
    }
    prev = t;
  }

  const Eigen::Index m =
      2 * (degree + 1) + static_cast<Eigen::Index>(interior.size());
  Eigen::VectorXd knots(m);
  Eigen::Index k = 0;
  for (int i = 0; i <= degree; ++i) knots[k++] = lo;
  for (double t : interior) knots[k++] = t;
  for (int i = 0; i <= degree; ++i) knots[k++] = hi;
  return knots;
}

Eigen::VectorXd bspline_basis(const Eigen::Ref<const Eigen::VectorXd>& knots,
                              int degree, double x) {
  const Eigen::Index m = knots.size();
  const Eigen::Index dim = m - degree - 1;
  if (degree < 0 || dim < 1) {
    throw std::invalid_argument("bspline_basis: knot vector too short");
  }
  for (Eigen::Index i = 1; i < m; ++i) {
    if (knots[i] < knots[i - 1]) {
      throw std::invalid_argument("bspline_basis: knots must be nondecreasing");
    }
  }
  if (x < knots[0] || x > knots[m - 1]) {
    throw std::domain_error("bspline_basis: x outside the knot range");
  }

  // Locate the nonempty span [knots[s], knots[s+1]) containing x; x at the
  // upper end of the domain belongs to the last nonempty span.
  Eigen::Index span = -1;
  for (Eigen::Index s = degree; s < dim; ++s) {
    if (knots[s] == knots[s + 1]) continue;
    span = s;
    if (x < knots[s + 1]) break;
  }
  if (span < 0) {
    throw std::invalid_argument("bspline_basis: degenerate knot vector");
  }

  // Triangular Cox-de Boor scheme for the degree+1 basis functions that are
  // nonzero on the span.
  std::vector<double> local(static_cast<std::size_t>(degree) + 1, 0.0);
  std::vector<double> left(static_cast<std::size_t>(degree) + 1, 0.0);
  std::vector<double> right(static_cast<std::size_t>(degree) + 1, 0.0);
  local[0] = 1.0;
  for (int d = 1; d <= degree; ++d) {
    left[d] = x - knots[span + 1 - d];
    right[d] = knots[span + d] - x;
    double saved = 0.0;
    for (int r = 0; r < d; ++r) {
      const double denom = right[r + 1] + left[d - r];
      const double temp = denom != 0.0 ? local[r] / denom : 0.0;
      local[r] = saved + right[r + 1] * temp;
      saved = left[d - r] * temp;
    }
    local[d] = saved;
  }

  Eigen::VectorXd basis = Eigen::VectorXd::Zero(dim);
  for (int r = 0; r <= degree; ++r) {
    basis[span - degree + r] = local[static_cast<std::size_t>(r)];
  }
  return basis;
}

}  // namespace qsmooth
