#include "qsmooth/simulation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qsmooth/errors.hpp"
#include "qsmooth/method_r.hpp"
#include "qsmooth/quantile_spline.hpp"
#include "qsmooth/robust_stats.hpp"
#include "qsmooth/rng.hpp"

namespace qsmooth {

namespace {

using json = nlohmann::ordered_json;

Eigen::VectorXd default_r_fitter(const PairedSample& sample, double q) {
  return method_r_fit(sample, q).theta_tilde;
}

Eigen::VectorXd default_spline_fitter(const PairedSample& sample, double q) {
  const SplineModel model = fit_auto(sample, q);
  return spline_predict(model, sample.x);
}

void validate_config(const SimConfig& config) {
  if (config.reps < 1) {
    throw std::invalid_argument("simulation: need at least one replication");
  }
  if (config.n < 10) {
    throw std::invalid_argument("simulation: need n >= 10");
  }
  if (!(config.q > 0.0 && config.q < 1.0)) {
    throw std::invalid_argument("simulation: q must lie in (0, 1)");
  }
  if (!(config.gh.g >= 0.0 && config.gh.h >= 0.0)) {
    throw std::invalid_argument("simulation: g and h must be nonnegative");
  }
  if (!config.run_r && !config.run_spline) {
    throw std::invalid_argument("simulation: no methods requested");
  }
}

struct RepOutcome {
  bool skipped = false;
  Criteria r;
  Criteria spline;
};

json metrics_to_json(const MethodMetrics& m) {
  return json{{"mse", m.mse},
              {"bias", m.bias},
              {"max_abs", m.mean_max_abs},
              {"tau", m.mean_tau}};
}

json cell_to_json(const CellReport& rep) {
  json out;
  out["g"] = rep.config.gh.g;
  out["h"] = rep.config.gh.h;
  out["vp"] = to_int(rep.config.vp);
  out["q"] = rep.config.q;
  out["n"] = static_cast<std::int64_t>(rep.config.n);
  out["k"] = rep.config.reps;
  out["seed"] = rep.config.master_seed;
  if (rep.error) {
    out["error"] = *rep.error;
    return out;
  }
  json methods;
  if (rep.r) methods["r"] = metrics_to_json(*rep.r);
  if (rep.spline) methods["spline"] = metrics_to_json(*rep.spline);
  out["methods"] = std::move(methods);
  if (rep.rmse_ratio && rep.rmax_ratio) {
    out["ratios"] = json{{"rmse", *rep.rmse_ratio}, {"rmax", *rep.rmax_ratio}};
  }
  out["skipped"] = rep.skipped;
  return out;
}

}  // namespace

Criteria criteria_for_fit(const Eigen::Ref<const Eigen::VectorXd>& true_theta,
                          const Eigen::Ref<const Eigen::VectorXd>& fitted_theta,
                          const Eigen::Ref<const Eigen::VectorXd>& xs) {
  const Eigen::Index n = true_theta.size();
  if (fitted_theta.size() != n || xs.size() != n) {
    throw std::invalid_argument("criteria_for_fit: length mismatch");
  }

  Criteria crit;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double err = true_theta[i] - fitted_theta[i];  // true minus estimate
    crit.sq_err_sum += err * err;
    crit.err_sum += err;
    crit.max_abs = std::max(crit.max_abs, std::fabs(err));
  }
  crit.tau = kendall_tau(xs, fitted_theta);
  return crit;
}

CellReport run_cell(const SimConfig& config, const CellRunOptions& options,
                    std::vector<ReplicationStats>* replications) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();

  const Fitter r_fitter =
      options.r_fitter ? options.r_fitter : Fitter(default_r_fitter);
  const Fitter spline_fitter = options.spline_fitter
                                   ? options.spline_fitter
                                   : Fitter(default_spline_fitter);

  const int reps = config.reps;
  std::vector<RepOutcome> outcomes(static_cast<std::size_t>(reps));

  auto run_replication = [&](int k) {
    RepOutcome& out = outcomes[static_cast<std::size_t>(k)];
    const std::uint64_t seed =
        substream_seed(config.master_seed, static_cast<std::uint64_t>(k) + 1);
    const SyntheticDataset ds =
        generate_dataset(config.n, config.gh, config.vp, seed);

    Eigen::VectorXd true_theta(config.n);
    const double eps_quantile = gh_quantile(config.q, config.gh);
    for (Eigen::Index i = 0; i < config.n; ++i) {
      true_theta[i] =
          ds.sample.x[i] + lambda_at(config.vp, ds.sample.x[i]) * eps_quantile;
    }

    try {
      if (config.run_r) {
        out.r = criteria_for_fit(true_theta, r_fitter(ds.sample, config.q),
                                 ds.sample.x);
      }
      if (config.run_spline) {
        out.spline = criteria_for_fit(
            true_theta, spline_fitter(ds.sample, config.q), ds.sample.x);
      }
    } catch (const DegenerateScaleError&) {
      out.skipped = true;
    } catch (const UndefinedCorrelationError&) {
      out.skipped = true;
    }
  };

  unsigned threads = options.threads;
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads < 1) threads = 1;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(reps));

  if (threads <= 1) {
    for (int k = 0; k < reps; ++k) run_replication(k);
  } else {
    // Static contiguous partition; every replication owns its seed substream,
    // so the partitioning cannot change any result.
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const int begin = static_cast<int>(
          static_cast<long long>(reps) * t / threads);
      const int end = static_cast<int>(
          static_cast<long long>(reps) * (t + 1) / threads);
      pool.emplace_back([&, begin, end] {
        for (int k = begin; k < end; ++k) run_replication(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  CellReport report;
  report.config = config;

  // Deterministic aggregation in replication order.
  MethodMetrics r_acc, spline_acc;
  int completed = 0;
  for (int k = 0; k < reps; ++k) {
    const RepOutcome& out = outcomes[static_cast<std::size_t>(k)];
    if (out.skipped) {
      ++report.skipped;
      continue;
    }
    ++completed;
    if (config.run_r) {
      r_acc.mse += out.r.sq_err_sum;
      r_acc.bias += out.r.err_sum;
      r_acc.mean_max_abs += out.r.max_abs;
      r_acc.mean_tau += out.r.tau;
    }
    if (config.run_spline) {
      spline_acc.mse += out.spline.sq_err_sum;
      spline_acc.bias += out.spline.err_sum;
      spline_acc.mean_max_abs += out.spline.max_abs;
      spline_acc.mean_tau += out.spline.tau;
    }
  }

  if (replications) {
    replications->clear();
    replications->reserve(static_cast<std::size_t>(reps));
    for (int k = 0; k < reps; ++k) {
      const RepOutcome& out = outcomes[static_cast<std::size_t>(k)];
      ReplicationStats stats;
      stats.seed =
          substream_seed(config.master_seed, static_cast<std::uint64_t>(k) + 1);
      stats.skipped = out.skipped;
      stats.r = out.r;
      stats.spline = out.spline;
      replications->push_back(stats);
    }
  }

  if (completed == 0) {
    report.error = "all replications skipped (degenerate fits)";
    return report;
  }

  const double point_count =
      static_cast<double>(config.n) * static_cast<double>(completed);
  auto finalize = [&](MethodMetrics& m) {
    m.mse /= point_count;
    m.bias /= point_count;
    m.mean_max_abs /= static_cast<double>(completed);
    m.mean_tau /= static_cast<double>(completed);
  };
  if (config.run_r) {
    finalize(r_acc);
    report.r = r_acc;
  }
  if (config.run_spline) {
    finalize(spline_acc);
    report.spline = spline_acc;
  }
  if (report.r && report.spline) {
    report.rmse_ratio = report.spline->mse / report.r->mse;
    report.rmax_ratio = report.spline->mean_max_abs / report.r->mean_max_abs;
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::vector<CellReport> run_grid(const std::vector<SimConfig>& configs,
                                 const CellRunOptions& options) {
  if (configs.empty()) {
    throw std::invalid_argument("run_grid: empty config list");
  }
  std::vector<CellReport> reports;
  reports.reserve(configs.size());
  for (const SimConfig& config : configs) {
    try {
      reports.push_back(run_cell(config, options));
    } catch (const std::exception& e) {
      CellReport failed;
      failed.config = config;
      failed.error = e.what();
      reports.push_back(std::move(failed));
    }
  }
  return reports;
}

std::string report_to_json(const CellReport& report, int indent) {
  return cell_to_json(report).dump(indent);
}

std::string reports_to_json(const std::vector<CellReport>& reports,
                            int indent) {
  json arr = json::array();
  for (const CellReport& r : reports) arr.push_back(cell_to_json(r));
  return arr.dump(indent);
}

std::string format_report_table(const std::vector<CellReport>& reports) {
  std::string out;
  out +=
      "   g    h  vp     q    n     K    RMSE    RMAX  bias(spl) bias(r) "
      " tau(spl)  tau(r)  skip\n";
  char line[256];
  auto cell = [](const std::optional<double>& v) {
    char buf[32];
    if (v.has_value()) {
      std::snprintf(buf, sizeof(buf), "%8.3f", *v);
    } else {
      std::snprintf(buf, sizeof(buf), "%8s", "--");
    }
    return std::string(buf);
  };

  for (const CellReport& r : reports) {
    std::snprintf(line, sizeof(line), "%4.1f %4.1f %3d %5.2f %4lld %5d",
                  r.config.gh.g, r.config.gh.h, to_int(r.config.vp), r.config.q,
                  static_cast<long long>(r.config.n), r.config.reps);
    out += line;
    if (r.error) {
      out += "  error: " + *r.error + "\n";
      continue;
    }
    out += cell(r.rmse_ratio);
    out += cell(r.rmax_ratio);
    out += cell(r.spline ? std::optional<double>(r.spline->bias) : std::nullopt);
    out += cell(r.r ? std::optional<double>(r.r->bias) : std::nullopt);
    out += cell(r.spline ? std::optional<double>(r.spline->mean_tau)
                         : std::nullopt);
    out += cell(r.r ? std::optional<double>(r.r->mean_tau) : std::nullopt);
    std::snprintf(line, sizeof(line), "  %4d\n", r.skipped);
    out += line;
  }
  return out;
}

}  // namespace qsmooth
