#include "qsmooth/robust_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qsmooth/errors.hpp"

namespace qsmooth {

namespace {

double median_of_sorted(const std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  if (n % 2 == 1) return v[mid];
  return 0.5 * (v[mid - 1] + v[mid]);
}

// Merge step of an inversion-counting sort: counts pairs i < j with
// buf[i] > buf[j] (strict), i.e. the discordant pairs once the data is
// ordered by (x, y).
std::int64_t merge_count(std::vector<double>& buf, std::vector<double>& tmp,
                         std::size_t lo, std::size_t mid, std::size_t hi) {
  std::int64_t inversions = 0;
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (buf[i] <= buf[j]) {
      tmp[k++] = buf[i++];
    } else {
      inversions += static_cast<std::int64_t>(mid - i);
      tmp[k++] = buf[j++];
    }
  }
  while (i < mid) tmp[k++] = buf[i++];
  while (j < hi) tmp[k++] = buf[j++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, buf.begin() + lo);
  return inversions;
}

std::int64_t count_inversions(std::vector<double>& buf, std::vector<double>& tmp,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t total = count_inversions(buf, tmp, lo, mid);
  total += count_inversions(buf, tmp, mid, hi);
  total += merge_count(buf, tmp, lo, mid, hi);
  return total;
}

// Sum of t(t-1)/2 over runs of equal values in a sorted vector.
std::int64_t tied_pairs(const std::vector<double>& sorted) {
  std::int64_t total = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      total += static_cast<std::int64_t>(run) * (run - 1) / 2;
      run = 1;
    }
  }
  total += static_cast<std::int64_t>(run) * (run - 1) / 2;
  return total;
}

}  // namespace

double median(const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() == 0) {
    throw std::domain_error("median: empty input");
  }
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  return median_of_sorted(v);
}

RobustScale robust_scale(const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() == 0) {
    throw std::domain_error("robust_scale: empty input");
  }
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());

  RobustScale out;
  out.median = median_of_sorted(v);
  for (double& u : v) u = std::fabs(u - out.median);
  std::sort(v.begin(), v.end());
  out.mad = median_of_sorted(v);
  out.madn = out.mad / 0.6745;
  return out;
}

double pinball(double u, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("pinball: q must lie in (0, 1)");
  }
  return u >= 0.0 ? u * q : u * (q - 1.0);
}

double kendall_tau(const Eigen::Ref<const Eigen::VectorXd>& xs,
                   const Eigen::Ref<const Eigen::VectorXd>& ys) {
  const Eigen::Index n = xs.size();
  if (ys.size() != n) {
    throw std::invalid_argument("kendall_tau: length mismatch");
  }
  if (n < 2) {
    throw std::invalid_argument("kendall_tau: need at least two pairs");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (xs[a] != xs[b]) return xs[a] < xs[b];
    return ys[a] < ys[b];
  });

  // Tie counts in x and in (x, y) from a scan over the sorted order.
  std::int64_t tx = 0, txy = 0;
  {
    std::int64_t run_x = 1, run_xy = 1;
    for (Eigen::Index k = 1; k < n; ++k) {
      const Eigen::Index cur = order[static_cast<std::size_t>(k)];
      const Eigen::Index prev = order[static_cast<std::size_t>(k - 1)];
      if (xs[cur] == xs[prev]) {
        ++run_x;
        if (ys[cur] == ys[prev]) {
          ++run_xy;
        } else {
          txy += run_xy * (run_xy - 1) / 2;
          run_xy = 1;
        }
      } else {
        tx += run_x * (run_x - 1) / 2;
        txy += run_xy * (run_xy - 1) / 2;
        run_x = 1;
        run_xy = 1;
      }
    }
    tx += run_x * (run_x - 1) / 2;
    txy += run_xy * (run_xy - 1) / 2;
  }

  std::vector<double> y_in_x_order(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    y_in_x_order[static_cast<std::size_t>(k)] = ys[order[static_cast<std::size_t>(k)]];
  }
  std::vector<double> tmp(y_in_x_order.size());
  const std::int64_t discordant =
      count_inversions(y_in_x_order, tmp, 0, y_in_x_order.size());

  // y_in_x_order is now sorted, so tie counting reuses it.
  const std::int64_t ty = tied_pairs(y_in_x_order);

  const std::int64_t n0 = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (tx == n0 || ty == n0) {
    throw UndefinedCorrelationError(
        "kendall_tau: correlation undefined for an all-tied variable");
  }

  const double num =
      static_cast<double>(n0 - tx - ty + txy - 2 * discordant);
  const double den = std::sqrt(static_cast<double>(n0 - tx)) *
                     std::sqrt(static_cast<double>(n0 - ty));
  return std::clamp(num / den, -1.0, 1.0);
}

}  // namespace qsmooth
