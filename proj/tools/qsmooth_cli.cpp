// Command-line front end: fit smoothers to CSV data, run Monte Carlo
// comparison grids and sample synthetic datasets.
//
// Exit codes: 0 ok, 1 I/O failure, 2 invalid input, 3 numerical degeneracy.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsmooth/csv.hpp"
#include "qsmooth/dataset.hpp"
#include "qsmooth/errors.hpp"
#include "qsmooth/method_r.hpp"
#include "qsmooth/quantile_spline.hpp"
#include "qsmooth/simulation.hpp"
#include "qsmooth/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;

struct FitArgs {
  std::string input;
  std::string output;  // empty: stdout
  std::string method = "r";
  std::string format = "csv";
  std::string x_col = "x";
  std::string y_col = "y";
  double quantile = 0.5;
  double span_f = 0.8;
  double span_xi = 0.75;
};

struct SampleArgs {
  long long n = 100;
  double g = 0.0;
  double h = 0.0;
  int vp = 1;
  std::uint64_t seed = 1;
  std::string output;  // empty: stdout
};

struct SimulateArgs {
  double g = 0.0;
  double h = 0.0;
  int vp = 1;
  double quantile = 0.5;
  long long n = 50;
  int reps = 500;
  std::uint64_t seed = 1;
  std::string methods = "r,spline";
  std::string config_path;
  std::string out_path;  // JSON file
  bool table2 = false;
  bool json_stdout = false;
  unsigned threads = 0;
};

void write_text_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    if (!std::cout) throw std::ios_base::failure("write to stdout failed");
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) throw std::ios_base::failure("write failed for '" + path + "'");
}

int run_fit(const FitArgs& args) {
  if (!(args.quantile > 0.0 && args.quantile < 1.0)) {
    std::cerr << "error: --quantile must lie in (0, 1)\n";
    return kExitInvalid;
  }
  if (!(args.span_f > 0.0)) {
    std::cerr << "error: --span-f must be positive\n";
    return kExitInvalid;
  }
  if (!(args.span_xi > 0.0 && args.span_xi <= 1.0)) {
    std::cerr << "error: --span-xi must lie in (0, 1]\n";
    return kExitInvalid;
  }

  const qsmooth::PairedSample sample =
      qsmooth::read_xy_csv(args.input, args.x_col, args.y_col);
  qsmooth::validate_sample(sample);

  Eigen::VectorXd fitted;
  if (args.method == "r") {
    fitted = qsmooth::method_r_fit(sample, args.quantile, args.span_f,
                                   args.span_xi)
                 .theta_tilde;
  } else {
    const qsmooth::SplineModel model = qsmooth::fit_auto(sample, args.quantile);
    if (model.rank_deficient) {
      std::cerr << "warning: spline basis columns are collinear on this data\n";
    }
    fitted = qsmooth::spline_predict(model, sample.x);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(sample.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return sample.x[a] < sample.x[b];
  });

  if (args.format == "svg") {
    const std::string svg = qsmooth::render_fit_svg(
        sample.x, sample.y, fitted,
        "q=" + qsmooth::format_double(args.quantile) +
            " fit (method " + args.method + ")");
    write_text_output(args.output, svg);
    return kExitOk;
  }

  std::ostringstream csv;
  csv << "x,fitted\n";
  for (Eigen::Index k : order) {
    csv << qsmooth::format_double(sample.x[k]) << ','
        << qsmooth::format_double(fitted[k]) << '\n';
  }
  write_text_output(args.output, csv.str());
  return kExitOk;
}

int run_sample(const SampleArgs& args) {
  if (args.n < 2) {
    std::cerr << "error: --n must be at least 2\n";
    return kExitInvalid;
  }
  if (args.g < 0.0 || args.h < 0.0) {
    std::cerr << "error: --g and --h must be nonnegative\n";
    return kExitInvalid;
  }

  const qsmooth::SyntheticDataset ds = qsmooth::generate_dataset(
      static_cast<Eigen::Index>(args.n), qsmooth::GhParams{args.g, args.h},
      qsmooth::variance_pattern_from_int(args.vp), args.seed);

  std::ostringstream csv;
  csv << "x,y\n";
  for (Eigen::Index i = 0; i < ds.sample.size(); ++i) {
    csv << qsmooth::format_double(ds.sample.x[i]) << ','
        << qsmooth::format_double(ds.sample.y[i]) << '\n';
  }
  write_text_output(args.output, csv.str());
  return kExitOk;
}

// --- simulate: config-file handling -----------------------------------------

std::string trim_copy(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const std::string t = trim_copy(item);
    if (!t.empty()) items.push_back(t);
  }
  return items;
}

// Simple `key = value[, value...]` format; '#' starts a comment line.
std::map<std::string, std::vector<std::string>> parse_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config '" + path + "'");

  std::map<std::string, std::vector<std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim_copy(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim_copy(t.substr(0, eq));
    const std::vector<std::string> values = split_list(t.substr(eq + 1));
    if (key.empty() || values.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    }
    entries[key] = values;
  }
  return entries;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid " + what + " value '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid " + what + " value '" + s + "'");
  }
}

void parse_methods(const std::string& spec, bool& run_r, bool& run_spline) {
  run_r = false;
  run_spline = false;
  for (const std::string& m : split_list(spec)) {
    if (m == "r") {
      run_r = true;
    } else if (m == "spline") {
      run_spline = true;
    } else {
      throw std::invalid_argument("unknown method '" + m +
                                  "' (expected r and/or spline)");
    }
  }
  if (!run_r && !run_spline) {
    throw std::invalid_argument("no methods requested");
  }
}

std::vector<qsmooth::SimConfig> build_configs(const SimulateArgs& args,
                                              const CLI::App* cmd) {
  // Dimension lists start from defaults, then the config file, then any
  // explicitly set flag overrides its dimension with a single value.
  std::vector<double> gs{args.g}, hs{args.h}, qs{args.quantile};
  std::vector<int> vps{args.vp};
  long long n = args.n;
  int reps = args.reps;
  std::uint64_t seed = args.seed;
  bool run_r = true, run_spline = true;
  parse_methods(args.methods, run_r, run_spline);

  if (!args.config_path.empty()) {
    const auto entries = parse_config_file(args.config_path);
    for (const auto& [key, values] : entries) {
      if (key == "g" || key == "h" || key == "q") {
        std::vector<double> parsed;
        for (const std::string& v : values) parsed.push_back(parse_double(v, key));
        (key == "g" ? gs : key == "h" ? hs : qs) = parsed;
      } else if (key == "vp") {
        vps.clear();
        for (const std::string& v : values) {
          vps.push_back(static_cast<int>(parse_int(v, key)));
        }
      } else if (key == "n") {
        n = parse_int(values.front(), key);
      } else if (key == "k" || key == "reps") {
        reps = static_cast<int>(parse_int(values.front(), key));
      } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(parse_int(values.front(), key));
      } else if (key == "methods") {
        std::string joined;
        for (const std::string& v : values) {
          if (!joined.empty()) joined += ',';
          joined += v;
        }
        parse_methods(joined, run_r, run_spline);
      } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
      }
    }
  }

  if (cmd->count("--g") > 0) gs = {args.g};
  if (cmd->count("--h") > 0) hs = {args.h};
  if (cmd->count("--vp") > 0) vps = {args.vp};
  if (cmd->count("--quantile") > 0) qs = {args.quantile};
  if (cmd->count("--n") > 0) n = args.n;
  if (cmd->count("--reps") > 0) reps = args.reps;
  if (cmd->count("--seed") > 0) seed = args.seed;
  if (cmd->count("--methods") > 0) parse_methods(args.methods, run_r, run_spline);

  std::vector<qsmooth::SimConfig> configs;
  auto push = [&](double g, double h, int vp, double q) {
    qsmooth::SimConfig config;
    config.gh = qsmooth::GhParams{g, h};
    config.vp = qsmooth::variance_pattern_from_int(vp);
    config.q = q;
    config.n = static_cast<Eigen::Index>(n);
    config.reps = reps;
    config.master_seed = seed;
    config.run_r = run_r;
    config.run_spline = run_spline;
    configs.push_back(config);
  };

  if (args.table2) {
    // The full comparison grid: both quantiles, the four distributions,
    // the three variance patterns.
    const std::vector<std::pair<double, double>> dists{
        {0.0, 0.0}, {0.0, 0.2}, {0.2, 0.0}, {0.2, 0.2}};
    for (double q : {0.5, 0.75}) {
      for (const auto& [g, h] : dists) {
        for (int vp : {1, 2, 3}) push(g, h, vp, q);
      }
    }
    return configs;
  }

  for (double g : gs) {
    for (double h : hs) {
      for (int vp : vps) {
        for (double q : qs) push(g, h, vp, q);
      }
    }
  }
  return configs;
}

void validate_configs(const std::vector<qsmooth::SimConfig>& configs) {
  for (const qsmooth::SimConfig& c : configs) {
    if (!(c.q > 0.0 && c.q < 1.0)) {
      throw std::invalid_argument("quantile must lie in (0, 1)");
    }
    if (c.n < 10) throw std::invalid_argument("n must be at least 10");
    if (c.reps < 1) throw std::invalid_argument("reps must be at least 1");
    if (c.gh.g < 0.0 || c.gh.h < 0.0) {
      throw std::invalid_argument("g and h must be nonnegative");
    }
  }
}

int run_simulate(const SimulateArgs& args, const CLI::App* cmd) {
  const std::vector<qsmooth::SimConfig> configs = build_configs(args, cmd);
  validate_configs(configs);

  qsmooth::CellRunOptions options;
  options.threads = args.threads;
  const std::vector<qsmooth::CellReport> reports =
      qsmooth::run_grid(configs, options);

  const std::string json = qsmooth::reports_to_json(reports) + "\n";
  if (!args.out_path.empty()) {
    write_text_output(args.out_path, json);
  }
  if (args.json_stdout) {
    write_text_output("", json);
  } else {
    write_text_output("", qsmooth::format_report_table(reports));
  }

  // A failed cell is reported, not fatal to the others; reflect it in the
  // exit status all the same.
  for (const qsmooth::CellReport& r : reports) {
    if (r.error) return kExitDegenerate;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantile regression smoothers and comparison harness"};
  app.require_subcommand(1);
  // --h is a distribution parameter below, so help is --help only
  app.set_help_flag("--help", "print help and exit");

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand(
      "fit", "fit a conditional-quantile curve to a two-column CSV");
  fit->add_option("--input", fit_args.input, "input CSV path")->required();
  fit->add_option("--output", fit_args.output,
                  "output path (default: stdout)");
  fit->add_option("--method", fit_args.method, "r or spline")
      ->check(CLI::IsMember({"r", "spline"}));
  fit->add_option("--quantile", fit_args.quantile, "quantile in (0, 1)");
  fit->add_option("--span-f", fit_args.span_f,
                  "running-interval span (default 0.8)");
  fit->add_option("--span-xi", fit_args.span_xi,
                  "re-smoothing span in (0, 1] (default 0.75)");
  fit->add_option("--format", fit_args.format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}));
  fit->add_option("--x-col", fit_args.x_col, "x column name (default x)");
  fit->add_option("--y-col", fit_args.y_col, "y column name (default y)");

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand(
      "sample", "generate a synthetic dataset as CSV");
  sample->set_help_flag("--help", "print help and exit");
  sample->add_option("--n", sample_args.n, "sample size (>= 2)");
  sample->add_option("--g", sample_args.g, "skewness parameter (>= 0)");
  sample->add_option("--h", sample_args.h, "tail parameter (>= 0)");
  sample->add_option("--vp", sample_args.vp, "variance pattern 1, 2 or 3")
      ->check(CLI::Range(1, 3));
  sample->add_option("--seed", sample_args.seed, "RNG seed");
  sample->add_option("--output", sample_args.output,
                     "output path (default: stdout)");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo comparison of the two smoothers");
  simulate->set_help_flag("--help", "print help and exit");
  simulate->add_option("--g", sim_args.g, "skewness parameter");
  simulate->add_option("--h", sim_args.h, "tail parameter");
  simulate->add_option("--vp", sim_args.vp, "variance pattern 1, 2 or 3")
      ->check(CLI::Range(1, 3));
  simulate->add_option("--quantile", sim_args.quantile, "quantile in (0, 1)");
  simulate->add_option("--n", sim_args.n, "sample size per replication");
  simulate->add_option("--reps,--k", sim_args.reps, "replications per cell");
  simulate->add_option("--seed", sim_args.seed, "master seed");
  simulate->add_option("--methods", sim_args.methods,
                       "comma list of methods: r,spline");
  simulate->add_option("--config", sim_args.config_path,
                       "key = value[, value...] config file; flags override");
  simulate->add_option("--out", sim_args.out_path, "write JSON report here");
  simulate->add_flag("--json", sim_args.json_stdout,
                     "print JSON instead of the text table");
  simulate->add_option("--threads", sim_args.threads,
                       "worker threads (default: hardware)");
  CLI::Option* table2 = simulate->add_flag(
      "--table2", sim_args.table2, "run the full 24-cell comparison grid");
  table2->excludes("--g", "--h", "--vp", "--quantile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (fit->parsed()) return run_fit(fit_args);
    if (sample->parsed()) return run_sample(sample_args);
    if (simulate->parsed()) return run_simulate(sim_args, simulate);
  } catch (const qsmooth::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const qsmooth::DegenerateScaleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
