#pragma once

#include <Eigen/Core>

namespace qsmooth {

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  int max_iterations = 0;  // 0: choose from problem size
};

struct SimplexResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

  Status status = Status::Optimal;
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;

  bool ok() const { return status == Status::Optimal; }
};

/// Dense two-phase primal simplex for
///     min c'x  subject to  A x = b,  x >= 0.
/// Dantzig pricing with a Bland's-rule fallback after a long degenerate
/// stretch, so the method always terminates.
SimplexResult simplex_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            const Eigen::VectorXd& c,
                            const SimplexOptions& options = {});

}  // namespace qsmooth
