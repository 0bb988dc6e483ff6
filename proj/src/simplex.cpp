#include "qsmooth/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qsmooth {

namespace {

// Dense tableau. Columns are [structural | artificial | rhs]; row `rows`
// holds the reduced costs of the phase being solved.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<Eigen::Index> basis;   // basic variable of each row
  std::vector<bool> row_active;     // redundant rows get switched off
  Eigen::Index rows = 0;
  Eigen::Index structural = 0;
  Eigen::Index total = 0;           // structural + artificial
};

void pivot(Tableau& tab, Eigen::Index row, Eigen::Index col) {
  tab.t.row(row) /= tab.t(row, col);
  for (Eigen::Index i = 0; i <= tab.rows; ++i) {
    if (i == row) continue;
    const double factor = tab.t(i, col);
    if (factor != 0.0) {
      tab.t.row(i) -= factor * tab.t.row(row);
      tab.t(i, col) = 0.0;
    }
  }
  tab.basis[static_cast<std::size_t>(row)] = col;
}

// Rebuild the reduced-cost row from the tableau body and the phase costs;
// counters the roundoff drift of long pivot sequences.
void refresh_cost_row(Tableau& tab, const Eigen::VectorXd& phase_cost) {
  tab.t.row(tab.rows).setZero();
  tab.t.block(tab.rows, 0, 1, phase_cost.size()) = phase_cost.transpose();
  for (Eigen::Index i = 0; i < tab.rows; ++i) {
    if (!tab.row_active[static_cast<std::size_t>(i)]) continue;
    const double cb = phase_cost[tab.basis[static_cast<std::size_t>(i)]];
    if (cb != 0.0) tab.t.row(tab.rows) -= cb * tab.t.row(i);
  }
}

enum class LoopResult { Optimal, Unbounded, IterationLimit };

// Primal simplex iterations. Dantzig pricing with largest-pivot ratio tie
// break; after a long degenerate stretch it falls back to Bland's rule so
// cycling cannot occur. Columns whose negative reduced cost cannot be
// pivoted and sits at noise level are banned instead of declared unbounded.
LoopResult run_simplex(Tableau& tab, const Eigen::VectorXd& phase_cost,
                       const SimplexOptions& opt, int max_iter,
                       int& iterations) {
  const Eigen::Index rhs = tab.total;
  const Eigen::Index allowed = tab.structural;
  const double noise_floor =
      1e-6 * (1.0 + phase_cost.cwiseAbs().maxCoeff());

  bool bland = false;
  int degenerate_streak = 0;
  int since_refresh = 0;
  const int bland_threshold = static_cast<int>(tab.rows + allowed) + 32;
  std::vector<bool> banned(static_cast<std::size_t>(allowed), false);

  for (; iterations < max_iter; ++iterations) {
    if (++since_refresh >= 64) {
      refresh_cost_row(tab, phase_cost);
      since_refresh = 0;
    }

    // Entering column.
    Eigen::Index enter = -1;
    if (bland) {
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (!banned[static_cast<std::size_t>(j)] &&
            tab.t(tab.rows, j) < -opt.optimality_tol) {
          enter = j;
          break;
        }
      }
    } else {
      double best = -opt.optimality_tol;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (!banned[static_cast<std::size_t>(j)] && tab.t(tab.rows, j) < best) {
          best = tab.t(tab.rows, j);
          enter = j;
        }
      }
    }
    if (enter < 0) return LoopResult::Optimal;

    // Ratio test.
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < tab.rows; ++i) {
      if (!tab.row_active[static_cast<std::size_t>(i)]) continue;
      const double a = tab.t(i, enter);
      if (a <= opt.feasibility_tol) continue;
      const double ratio = std::max(tab.t(i, rhs), 0.0) / a;
      if (ratio < best_ratio) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      if (tab.t(tab.rows, enter) >= -noise_floor) {
        // Roundoff-level reduced cost with no pivot support: not a real
        // descent direction, drop the column from pricing.
        banned[static_cast<std::size_t>(enter)] = true;
        continue;
      }
      return LoopResult::Unbounded;
    }

    // Tie handling within a small window: Bland wants the smallest basis
    // index, otherwise take the numerically largest pivot.
    const double window = best_ratio + 1e-10 * (1.0 + best_ratio);
    if (bland) {
      for (Eigen::Index i = 0; i < tab.rows; ++i) {
        if (!tab.row_active[static_cast<std::size_t>(i)]) continue;
        const double a = tab.t(i, enter);
        if (a <= opt.feasibility_tol) continue;
        if (std::max(tab.t(i, rhs), 0.0) / a <= window &&
            tab.basis[static_cast<std::size_t>(i)] <
                tab.basis[static_cast<std::size_t>(leave)]) {
          leave = i;
        }
      }
    } else {
      double best_pivot = tab.t(leave, enter);
      for (Eigen::Index i = 0; i < tab.rows; ++i) {
        if (!tab.row_active[static_cast<std::size_t>(i)]) continue;
        const double a = tab.t(i, enter);
        if (a <= opt.feasibility_tol) continue;
        if (std::max(tab.t(i, rhs), 0.0) / a <= window && a > best_pivot) {
          best_pivot = a;
          leave = i;
        }
      }
    }

    if (best_ratio <= opt.feasibility_tol) {
      if (++degenerate_streak > bland_threshold) bland = true;
    } else {
      degenerate_streak = 0;
    }
    pivot(tab, leave, enter);
  }
  return LoopResult::IterationLimit;
}

}  // namespace

SimplexResult simplex_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            const Eigen::VectorXd& c,
                            const SimplexOptions& options) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n) {
    throw std::invalid_argument("simplex_solve: dimension mismatch");
  }

  // Row-normalized copy with b >= 0.
  Eigen::MatrixXd body(m, n);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    body.row(i) = sign * A.row(i);
    rhs[i] = sign * b[i];
  }

  // Crash basis: positive singleton columns serve as ready-made basic
  // variables, so artificials are only needed for the uncovered rows.
  std::vector<Eigen::Index> crash_col(static_cast<std::size_t>(m), -1);
  {
    std::vector<Eigen::Index> nonzeros(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> nonzero_row(static_cast<std::size_t>(n), -1);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < m; ++i) {
        if (body(i, j) != 0.0) {
          ++nonzeros[static_cast<std::size_t>(j)];
          nonzero_row[static_cast<std::size_t>(j)] = i;
          if (nonzeros[static_cast<std::size_t>(j)] > 1) break;
        }
      }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (nonzeros[static_cast<std::size_t>(j)] != 1) continue;
      const Eigen::Index i = nonzero_row[static_cast<std::size_t>(j)];
      if (body(i, j) > 0.0 && crash_col[static_cast<std::size_t>(i)] < 0) {
        crash_col[static_cast<std::size_t>(i)] = j;
      }
    }
  }

  Eigen::Index artificials = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (crash_col[static_cast<std::size_t>(i)] < 0) ++artificials;
  }

  Tableau tab;
  tab.rows = m;
  tab.structural = n;
  tab.total = n + artificials;
  tab.t = Eigen::MatrixXd::Zero(m + 1, tab.total + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  tab.row_active.assign(static_cast<std::size_t>(m), true);

  Eigen::Index next_artificial = n;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index cc = crash_col[static_cast<std::size_t>(i)];
    if (cc >= 0) {
      const double scale = body(i, cc);
      tab.t.block(i, 0, 1, n) = body.row(i) / scale;
      tab.t(i, tab.total) = rhs[i] / scale;
      tab.basis[static_cast<std::size_t>(i)] = cc;
    } else {
      tab.t.block(i, 0, 1, n) = body.row(i);
      tab.t(i, next_artificial) = 1.0;
      tab.t(i, tab.total) = rhs[i];
      tab.basis[static_cast<std::size_t>(i)] = next_artificial++;
    }
  }

  const int max_iter = options.max_iterations > 0
                           ? options.max_iterations
                           : static_cast<int>(400 + 60 * (m + n));

  SimplexResult result;
  result.x = Eigen::VectorXd::Zero(n);

  // Phase 1: minimize the artificial sum (skipped when the crash basis
  // already covers every row).
  if (artificials > 0) {
    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(tab.total);
    phase1_cost.segment(n, artificials).setOnes();
    refresh_cost_row(tab, phase1_cost);

    const LoopResult loop =
        run_simplex(tab, phase1_cost, options, max_iter, result.iterations);
    if (loop == LoopResult::IterationLimit) {
      result.status = SimplexResult::Status::IterationLimit;
      return result;
    }
    // Unbounded cannot happen for a sum of nonnegative variables.
    const double artificial_sum = -tab.t(m, tab.total);
    if (artificial_sum > options.feasibility_tol) {
      result.status = SimplexResult::Status::Infeasible;
      return result;
    }

    // Drive remaining basic artificials out; rows that cannot pivot on a
    // structural column are redundant.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::fabs(tab.t(i, j)) > options.feasibility_tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(tab, i, col);
      } else {
        tab.row_active[static_cast<std::size_t>(i)] = false;
        tab.t.row(i).setZero();
      }
    }
  }

  // Phase 2 on the real objective.
  Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(tab.total);
  phase2_cost.segment(0, n) = c;
  refresh_cost_row(tab, phase2_cost);

  const LoopResult loop =
      run_simplex(tab, phase2_cost, options, max_iter, result.iterations);
  if (loop == LoopResult::IterationLimit) {
    result.status = SimplexResult::Status::IterationLimit;
    return result;
  }
  if (loop == LoopResult::Unbounded) {
    result.status = SimplexResult::Status::Unbounded;
    return result;
  }

  for (Eigen::Index i = 0; i < m; ++i) {
    if (!tab.row_active[static_cast<std::size_t>(i)]) continue;
    const Eigen::Index bj = tab.basis[static_cast<std::size_t>(i)];
    if (bj < n) result.x[bj] = std::max(tab.t(i, tab.total), 0.0);
  }
  result.objective = c.dot(result.x);
  result.status = SimplexResult::Status::Optimal;
  return result;
}

}  // namespace qsmooth
