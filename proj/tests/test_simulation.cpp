#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qsmooth/dataset.hpp"
#include "qsmooth/errors.hpp"
#include "qsmooth/robust_stats.hpp"
#include "qsmooth/simulation.hpp"

using namespace qsmooth;

namespace {

SimConfig small_config() {
  SimConfig config;
  config.gh = GhParams{0.0, 0.0};
  config.vp = VariancePattern::VP1;
  config.q = 0.5;
  config.n = 20;
  config.reps = 10;
  config.master_seed = 5;
  return config;
}

// Fitter stub that returns the exact conditional quantiles.
Fitter perfect_fitter(const GhParams& gh, VariancePattern vp) {
  return [gh, vp](const PairedSample& sample, double q) {
    Eigen::VectorXd theta(sample.size());
    for (Eigen::Index i = 0; i < sample.size(); ++i) {
      theta[i] = true_conditional_quantile(sample.x[i], q, gh, vp);
    }
    return theta;
  };
}

}  // namespace

TEST_CASE("criteria_for_fit perfect and offset fits") {
  Eigen::VectorXd xs(50), truth(50);
  for (int i = 0; i < 50; ++i) {
    xs[i] = 0.1 * i;
    truth[i] = 2.0 * xs[i] - 1.0;
  }

  const Criteria perfect = criteria_for_fit(truth, truth, xs);
  CHECK(perfect.sq_err_sum == 0.0);
  CHECK(perfect.err_sum == 0.0);
  CHECK(perfect.max_abs == 0.0);
  CHECK(perfect.tau == doctest::Approx(kendall_tau(xs, truth)));

  const Eigen::VectorXd offset = truth.array() + 0.1;
  const Criteria off = criteria_for_fit(truth, offset, xs);
  CHECK(off.sq_err_sum == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(off.err_sum == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(off.max_abs == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(off.tau == doctest::Approx(perfect.tau));

  Eigen::VectorXd short_vec(3);
  CHECK_THROWS_AS(criteria_for_fit(truth, short_vec, xs),
                  std::invalid_argument);
}

TEST_CASE("criteria_for_fit equals a naive reimplementation") {
  std::mt19937 gen(8);
  std::normal_distribution<double> normal;
  Eigen::VectorXd xs(5), truth(5), fitted(5);
  for (int i = 0; i < 5; ++i) {
    xs[i] = normal(gen);
    truth[i] = normal(gen);
    fitted[i] = normal(gen);
  }
  const Criteria got = criteria_for_fit(truth, fitted, xs);

  double sq = 0, sum = 0, mx = 0;
  for (int i = 0; i < 5; ++i) {
    const double e = truth[i] - fitted[i];
    sq += e * e;
    sum += e;
    mx = std::max(mx, std::fabs(e));
  }
  CHECK(got.sq_err_sum == doctest::Approx(sq).epsilon(1e-14));
  CHECK(got.err_sum == doctest::Approx(sum).epsilon(1e-14));
  CHECK(got.max_abs == doctest::Approx(mx).epsilon(1e-14));
  CHECK(got.tau == doctest::Approx(kendall_tau(xs, fitted)).epsilon(1e-14));
}

TEST_CASE("true conditional quantiles are monotone under VP1") {
  // so a perfect fit must reach tau = 1 exactly
  SimConfig config = small_config();
  config.reps = 1;
  CellRunOptions options;
  options.r_fitter = perfect_fitter(config.gh, config.vp);
  options.spline_fitter = options.r_fitter;
  const CellReport rep = run_cell(config, options);
  REQUIRE(rep.r.has_value());
  CHECK(rep.r->mse == 0.0);
  CHECK(rep.r->bias == 0.0);
  CHECK(rep.r->mean_max_abs == 0.0);
  CHECK(rep.r->mean_tau == doctest::Approx(1.0));
  CHECK(rep.skipped == 0);
}

TEST_CASE("run_cell determinism across runs and thread counts") {
  SimConfig config = small_config();
  config.reps = 12;

  CellRunOptions one;
  one.threads = 1;
  CellRunOptions four;
  four.threads = 4;

  const CellReport a = run_cell(config, one);
  const CellReport b = run_cell(config, four);
  const CellReport c = run_cell(config, one);

  CHECK(a.r->mse == b.r->mse);
  CHECK(a.r->bias == b.r->bias);
  CHECK(a.r->mean_max_abs == b.r->mean_max_abs);
  CHECK(a.r->mean_tau == b.r->mean_tau);
  CHECK(a.spline->mse == b.spline->mse);
  CHECK(a.spline->mean_tau == b.spline->mean_tau);
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(report_to_json(a) == report_to_json(c));
}

TEST_CASE("run_cell aggregates match an independent streaming pass") {
  SimConfig config = small_config();
  config.reps = 15;
  std::vector<ReplicationStats> reps;
  const CellReport report = run_cell(config, {}, &reps);
  REQUIRE(reps.size() == 15);

  double sq = 0, sum = 0, mx = 0, tau = 0;
  int completed = 0;
  for (const ReplicationStats& r : reps) {
    if (r.skipped) continue;
    ++completed;
    sq += r.r.sq_err_sum;
    sum += r.r.err_sum;
    mx += r.r.max_abs;
    tau += r.r.tau;

    // per replication, the max error dominates the RMS error
    CHECK(r.r.max_abs >=
          std::sqrt(r.r.sq_err_sum / static_cast<double>(config.n)) - 1e-12);
  }
  const double pts = static_cast<double>(config.n) * completed;
  CHECK(report.r->mse == doctest::Approx(sq / pts).epsilon(1e-12));
  CHECK(report.r->bias == doctest::Approx(sum / pts).epsilon(1e-12));
  CHECK(report.r->mean_max_abs == doctest::Approx(mx / completed).epsilon(1e-12));
  CHECK(report.r->mean_tau == doctest::Approx(tau / completed).epsilon(1e-12));

  // bias^2 never exceeds mse
  CHECK(report.r->bias * report.r->bias <= report.r->mse + 1e-15);
  CHECK(report.spline->bias * report.spline->bias <=
        report.spline->mse + 1e-15);

  // ratios are the spline-over-r quotients
  CHECK(*report.rmse_ratio ==
        doctest::Approx(report.spline->mse / report.r->mse));
  CHECK(*report.rmax_ratio ==
        doctest::Approx(report.spline->mean_max_abs / report.r->mean_max_abs));
}

TEST_CASE("skipped replications are counted, not imputed") {
  SimConfig config = small_config();
  config.reps = 8;
  config.run_spline = false;

  CellRunOptions options;
  int calls = 0;
  options.r_fitter = [&calls](const PairedSample& sample, double q) {
    ++calls;
    if (sample.x[0] > 0.0) {
      throw DegenerateScaleError("stub degenerate fit");
    }
    Eigen::VectorXd theta(sample.size());
    for (Eigen::Index i = 0; i < sample.size(); ++i) theta[i] = sample.x[i] + q;
    return theta;
  };
  options.threads = 1;

  const CellReport rep = run_cell(config, options);
  CHECK(calls == 8);
  CHECK(rep.skipped > 0);
  CHECK(rep.skipped < 8);
  CHECK(std::isfinite(rep.r->mse));

  // every replication failing surfaces as a cell error
  CellRunOptions always;
  always.r_fitter = [](const PairedSample&, double) -> Eigen::VectorXd {
    throw DegenerateScaleError("stub degenerate fit");
  };
  const CellReport dead = run_cell(config, always);
  CHECK(dead.error.has_value());
  CHECK(dead.skipped == 8);
}

TEST_CASE("run_cell validates its config") {
  SimConfig bad = small_config();
  bad.reps = 0;
  CHECK_THROWS_AS(run_cell(bad), std::invalid_argument);
  bad = small_config();
  bad.n = 5;
  CHECK_THROWS_AS(run_cell(bad), std::invalid_argument);
  bad = small_config();
  bad.q = 1.0;
  CHECK_THROWS_AS(run_cell(bad), std::invalid_argument);
  bad = small_config();
  bad.run_r = bad.run_spline = false;
  CHECK_THROWS_AS(run_cell(bad), std::invalid_argument);
}

TEST_CASE("run_grid preserves order and isolates failures") {
  SimConfig a = small_config();
  a.reps = 3;
  SimConfig b = a;
  b.gh = GhParams{0.2, 0.0};
  b.vp = VariancePattern::VP2;

  const std::vector<CellReport> reports = run_grid({a, b});
  REQUIRE(reports.size() == 2);
  CHECK(to_int(reports[0].config.vp) == 1);
  CHECK(to_int(reports[1].config.vp) == 2);

  // permuting the configs permutes identical reports
  const std::vector<CellReport> swapped = run_grid({b, a});
  CHECK(report_to_json(swapped[1]) == report_to_json(reports[0]));
  CHECK(report_to_json(swapped[0]) == report_to_json(reports[1]));

  // a single-cell grid is run_cell
  const std::vector<CellReport> solo = run_grid({a});
  CHECK(report_to_json(solo[0]) == report_to_json(run_cell(a)));

  CHECK_THROWS_AS(run_grid({}), std::invalid_argument);

  // a failing cell yields an error report without aborting its neighbours
  SimConfig broken = small_config();
  broken.n = 5;
  const std::vector<CellReport> mixed = run_grid({a, broken, b});
  REQUIRE(mixed.size() == 3);
  CHECK(!mixed[0].error.has_value());
  CHECK(mixed[1].error.has_value());
  CHECK(!mixed[2].error.has_value());
  CHECK(report_to_json(mixed[1]).find("\"error\"") != std::string::npos);
}

TEST_CASE("run_cell with a single method reports that method alone") {
  SimConfig config = small_config();
  config.reps = 4;
  config.run_r = false;
  const CellReport rep = run_cell(config);
  CHECK(!rep.r.has_value());
  REQUIRE(rep.spline.has_value());
  CHECK(std::isfinite(rep.spline->mse));
  CHECK(!rep.rmse_ratio.has_value());
  CHECK(!rep.rmax_ratio.has_value());
  const std::string json = report_to_json(rep);
  CHECK(json.find("\"spline\"") != std::string::npos);
  CHECK(json.find("\"r\"") == std::string::npos);
}

TEST_CASE("method R tracks the median cheaply at desk scale") {
  SimConfig config;
  config.gh = GhParams{0.0, 0.0};
  config.vp = VariancePattern::VP1;
  config.q = 0.5;
  config.n = 50;
  config.reps = 100;
  config.master_seed = 1;
  config.run_spline = false;
  const CellReport rep = run_cell(config);
  CHECK(rep.r->mean_tau >= 0.98);
  CHECK(std::fabs(rep.r->bias) <= 0.02);
  CHECK(rep.skipped == 0);
}

TEST_CASE("method R median bias shrinks at larger replication counts") {
  SimConfig config;
  config.gh = GhParams{0.0, 0.0};
  config.vp = VariancePattern::VP1;
  config.q = 0.5;
  config.n = 50;
  config.reps = 2000;
  config.master_seed = 2;
  config.run_spline = false;
  const CellReport rep = run_cell(config);
  CHECK(std::fabs(rep.r->bias) <= 0.02);
}

TEST_CASE("json report shape") {
  SimConfig config = small_config();
  config.reps = 2;
  const CellReport rep = run_cell(config);
  const std::string json = report_to_json(rep);
  CHECK(json.find("\"g\": 0.0") != std::string::npos);
  CHECK(json.find("\"vp\": 1") != std::string::npos);
  CHECK(json.find("\"methods\"") != std::string::npos);
  CHECK(json.find("\"r\"") != std::string::npos);
  CHECK(json.find("\"spline\"") != std::string::npos);
  CHECK(json.find("\"ratios\"") != std::string::npos);
  CHECK(json.find("\"skipped\": 0") != std::string::npos);
  CHECK(json.find("wall") == std::string::npos);

  // single-method report omits the ratios
  config.run_spline = false;
  const std::string solo = report_to_json(run_cell(config));
  CHECK(solo.find("\"ratios\"") == std::string::npos);
  CHECK(solo.find("\"spline\"") == std::string::npos);

  const std::string table = format_report_table({rep});
  CHECK(table.find("tau(r)") != std::string::npos);
}
