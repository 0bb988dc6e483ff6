#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qsmooth/dataset.hpp"

namespace qsmooth {

/// One Monte Carlo cell: distribution, heteroscedasticity pattern,
/// quantile, sample size and replication count.
struct SimConfig {
  GhParams gh;
  VariancePattern vp = VariancePattern::VP1;
  double q = 0.5;
  Eigen::Index n = 50;
  int reps = 500;
  std::uint64_t master_seed = 1;
  bool run_r = true;
  bool run_spline = true;
};

/// Per-replication accuracy summary of one fitted curve against the truth.
/// Error sums use the true-minus-estimate sign convention.
struct Criteria {
  double sq_err_sum = 0.0;
  double err_sum = 0.0;
  double max_abs = 0.0;
  double tau = 0.0;
};

Criteria criteria_for_fit(const Eigen::Ref<const Eigen::VectorXd>& true_theta,
                          const Eigen::Ref<const Eigen::VectorXd>& fitted_theta,
                          const Eigen::Ref<const Eigen::VectorXd>& xs);

/// Cell aggregates for one method: mse and bias average over all points and
/// replications, max_abs and tau average per replication.
struct MethodMetrics {
  double mse = 0.0;
  double bias = 0.0;
  double mean_max_abs = 0.0;
  double mean_tau = 0.0;
};

struct CellReport {
  SimConfig config;
  std::optional<MethodMetrics> r;
  std::optional<MethodMetrics> spline;
  // spline-over-r ratios, present when both methods ran
  std::optional<double> rmse_ratio;
  std::optional<double> rmax_ratio;
  int skipped = 0;
  double wall_seconds = 0.0;  // never serialized; reports stay byte-stable
  std::optional<std::string> error;  // set when the whole cell failed
};

/// A fitted-curve producer: sample + quantile -> fitted values at sample.x.
/// Overridable so tests can inject stub methods.
using Fitter = std::function<Eigen::VectorXd(const PairedSample&, double)>;

struct CellRunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  Fitter r_fitter;       // default: method_r_fit with f=0.8, xi=0.75
  Fitter spline_fitter;  // default: fit_auto
  bool collect_replications = false;
};

/// Per-replication record, kept only when collect_replications is set.
struct ReplicationStats {
  std::uint64_t seed = 0;
  bool skipped = false;
  Criteria r;
  Criteria spline;
};

/// Run one cell: per replication, generate a dataset from its own seed
/// substream, fit the requested methods and score them against the true
/// conditional quantiles. Replications run in parallel but are aggregated
/// in index order, so results do not depend on the thread count.
/// A replication that raises a degenerate-scale or undefined-correlation
/// error is counted in `skipped` and excluded from the averages.
CellReport run_cell(const SimConfig& config, const CellRunOptions& options = {},
                    std::vector<ReplicationStats>* replications = nullptr);

/// One report per config, order preserved; a failing cell yields a report
/// with `error` set instead of aborting the rest.
std::vector<CellReport> run_grid(const std::vector<SimConfig>& configs,
                                 const CellRunOptions& options = {});

/// JSON object for one cell (config echo, per-method metrics, ratios, skip
/// count), and a JSON array for a grid. Output is deterministic.
std::string report_to_json(const CellReport& report, int indent = 2);
std::string reports_to_json(const std::vector<CellReport>& reports,
                            int indent = 2);

/// Aligned plain-text table, one row per cell.
std::string format_report_table(const std::vector<CellReport>& reports);

}  // namespace qsmooth
