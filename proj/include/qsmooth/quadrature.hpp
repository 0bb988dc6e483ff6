#pragma once

#include <cmath>
#include <utility>

namespace qsmooth {

namespace detail {

template <typename F>
double adaptive_simpson_rec(const F& f, double lo, double mid, double hi,
                            double flo, double fmid, double fhi,
                            double whole, double tol, int depth) {
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double flmid = f(lmid);
  const double frmid = f(rmid);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * flmid + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frmid + fhi);
  const double delta = left + right - whole;
  // Non-finite deltas (overflowing integrands) must not drive refinement.
  if (depth <= 0 || !std::isfinite(delta) || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, lo, lmid, mid, flo, flmid, fmid, left,
                              0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, mid, rmid, hi, fmid, frmid, fhi, right,
                              0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson integration of f over [lo, hi] to absolute tolerance tol.
template <typename F>
double adaptive_simpson(F&& f, double lo, double hi, double tol,
                        int max_depth = 30) {
  if (lo == hi) return 0.0;
  const double mid = 0.5 * (lo + hi);
  const double flo = f(lo);
  const double fmid = f(mid);
  const double fhi = f(hi);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  return detail::adaptive_simpson_rec(f, lo, mid, hi, flo, fmid, fhi, whole,
                                      tol, max_depth);
}

/// Same integral split into unit-width panels, each integrated adaptively.
/// Robust when the integrand is sharply localized inside a wide interval.
template <typename F>
double panel_integrate(F&& f, double lo, double hi, double panel_tol) {
  double total = 0.0;
  double a = lo;
  while (a < hi) {
    const double b = std::min(a + 1.0, hi);
    total += adaptive_simpson(f, a, b, panel_tol);
    a = b;
  }
  return total;
}

}  // namespace qsmooth
