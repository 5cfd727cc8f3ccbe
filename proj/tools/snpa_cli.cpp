// Command-line front end: Monte Carlo experiments, EPA/SPA tests on CSV data,
// confidence intervals, Hill plots and simulation.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "snpa/dgp.hpp"
#include "snpa/errors.hpp"
#include "snpa/experiment.hpp"
#include "snpa/io.hpp"
#include "snpa/losses.hpp"
#include "snpa/pairwise.hpp"
#include "snpa/stats.hpp"
#include "snpa/subsampling.hpp"
#include "snpa/tail.hpp"

namespace {

using namespace snpa;

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::optional<std::size_t> parse_lag(const std::string& s) {
  if (s.empty() || s == "auto") return std::nullopt;
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.front() == '-') throw ValidationError("--lag: expected auto or an integer, got '" + s + "'");
  return v;
}

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::string out;
  std::optional<std::size_t> block;
  std::optional<double> level;
  std::string lag;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_config) {
  if (with_config) cmd->add_option("--config", f.config, "Experiment config file (key = value)");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--workers", f.workers, "Worker threads");
  cmd->add_option("--out", f.out, "Output CSV path (default stdout)");
  cmd->add_option("--block", f.block, "Subsample block size override");
  cmd->add_option("--level", f.level, "Nominal level");
  cmd->add_option("--lag", f.lag, "DM lag: auto or an integer");
}

int run_mc(const CommonFlags& f, bool power) {
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_experiment_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.workers) cfg.workers = *f.workers;
  if (f.block) cfg.block = *f.block;
  if (f.level) cfg.level = *f.level;
  if (!f.lag.empty()) cfg.lag = parse_lag(f.lag);
  const std::string path = f.out.empty() ? cfg.output : f.out;
  const auto rows = power ? run_power_experiment(cfg) : run_rejection_experiment(cfg);
  Output out(path);
  write_experiment_csv(out.stream(), rows);
  return 0;
}

SubsampleConfig subsample_config(const CommonFlags& f) {
  SubsampleConfig sc;
  sc.block = f.block;
  if (f.level) sc.level = *f.level;
  if (f.workers) sc.workers = *f.workers;
  return sc;
}

struct EpaFlags {
  std::string returns;
  std::string forecasts;
  double tau = 0.05;
  std::string split;
  std::vector<std::size_t> rw_windows;
  bool garch = false;
};

int run_epa(const CommonFlags& f, const EpaFlags& e) {
  auto loaded = load_returns(e.returns);
  std::cerr << "returns: " << loaded.series.size() << " rows kept, " << loaded.dropped_zero
            << " zero returns dropped\n";
  const auto& y = loaded.series;
  std::size_t split_index = 0;
  if (!e.split.empty()) {
    if (!is_iso_date(e.split)) throw ValidationError("--split: expected YYYY-MM-DD, got '" + e.split + "'");
    if (!is_iso_date(y.dates.front())) throw ValidationError("--split needs dated returns");
    while (split_index < y.size() && y.dates[split_index] < e.split) ++split_index;
    if (split_index == y.size()) throw ValidationError("--split " + e.split + " is after the last return");
  }
  std::vector<ForecastSeries> methods;
  if (!e.forecasts.empty()) methods = load_forecasts(e.forecasts, y, e.tau);
  for (std::size_t h : e.rw_windows) methods.push_back(rw_quantile_forecast(y, h, e.tau));
  if (e.garch) {
    if (split_index == 0) throw ValidationError("--garch needs --split to define the estimation sample");
    TimeSeries in_sample(std::vector<double>(y.values.begin(), y.values.begin() + split_index));
    const auto params = fit_garch11(in_sample);
    std::cerr << "G-N: mu=" << params.mu << " omega=" << params.omega << " alpha=" << params.alpha
              << " beta=" << params.beta << '\n';
    double var = 0.0, mean = 0.0;
    for (double v : in_sample.values) mean += v;
    mean /= static_cast<double>(in_sample.size());
    for (double v : in_sample.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(in_sample.size());
    methods.push_back(garch_var_forecast(params, y, e.tau, var));
  }
  PairwiseOptions opts;
  opts.tau = e.tau;
  opts.block = f.block;
  if (f.level) opts.level = *f.level;
  opts.dm_lag = f.lag.empty() ? std::optional<std::size_t>(20) : parse_lag(f.lag);
  opts.eval_start = split_index;
  const auto report = pairwise_epa_matrix(y, methods, opts);
  std::cerr << "evaluation: n=" << report.n << " from "
            << (report.start_label.empty() ? std::to_string(report.start_index) : report.start_label)
            << ", block=" << report.block << ", DM lag=" << report.dm_lag << '\n';
  Output out(f.out);
  write_pairwise_csv(out.stream(), report);
  return 0;
}

void write_report(std::ostream& os, const TestReport& r) {
  os << "statistic," << format_double(r.statistic) << '\n'
     << "critical_lower," << format_double(r.critical_lower) << '\n'
     << "critical_upper," << format_double(r.critical_upper) << '\n'
     << "level," << format_double(r.nominal_level) << '\n'
     << "reject," << r.reject << '\n';
  if (r.block_size) os << "block," << *r.block_size << '\n';
  os << "degenerate_windows," << r.degenerate_windows << '\n';
}

int run_spa(const CommonFlags& f, const std::string& input) {
  const auto table = load_forecast_table(input);
  for (std::size_t j = 0; j < table.methods.size(); ++j) {
    for (double v : table.columns[j]) {
      if (std::isnan(v)) throw ValidationError(input + ": missing value in column '" + table.methods[j] + "'");
    }
  }
  const auto x = LossMatrix::from_columns(table.columns);
  Output out(f.out);
  write_report(out.stream(), spa_test(x, subsample_config(f)));
  return 0;
}

int run_ci(const CommonFlags& f, const std::string& input) {
  const auto series = load_series(input);
  const auto ci = mean_confidence_interval(series.view(), subsample_config(f));
  Output out(f.out);
  out.stream() << "mean," << format_double(ci.mean) << '\n'
               << "lower," << format_double(ci.lower) << '\n'
               << "upper," << format_double(ci.upper) << '\n'
               << "block," << ci.block_size << '\n'
               << "degenerate," << ci.degenerate << '\n';
  return 0;
}

struct HillFlags {
  std::string input;
  std::size_t k_min = 10;
  std::size_t k_max = 0;
  std::size_t steps = 50;
  double tail_quantile = 0.99;
};

int run_hill(const CommonFlags& f, const HillFlags& h) {
  const auto series = load_series(h.input);
  const auto grid = hill_k_grid(series.size(), h.k_min, h.k_max, h.steps);
  const auto points = hill_plot(series.view(), grid);
  std::cerr << "tail balance p+ = " << tail_balance_estimate(series.view(), h.tail_quantile)
            << ", a_n = " << normalizing_sequence_estimate(series.view()) << '\n';
  Output out(f.out);
  write_hill_csv(out.stream(), points);
  return 0;
}

struct SimFlags {
  std::string noise = "symmetric-stable";
  double kappa = 1.5;
  double phi = 0.5;
  double delta = 0.0;
  double p_plus = 0.9;
  std::size_t n = 1000;
  std::size_t burn_in = kDefaultBurnIn;
  std::uint64_t stream = 0;
};

int run_simulate(const CommonFlags& f, const SimFlags& s) {
  Ar1Spec spec;
  spec.noise = make_noise(parse_noise_family(s.noise), s.kappa, s.p_plus);
  spec.phi = s.phi;
  spec.delta = s.delta;
  spec.n = s.n;
  spec.burn_in = s.burn_in;
  spec.seed = f.seed.value_or(0);
  spec.stream_id = s.stream;
  const auto sim = simulate_ar1(spec);
  Output out(f.out);
  write_series(out.stream(), sim.series, "x");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-normalized and subsampling inference for heavy-tailed time series"};
  app.require_subcommand(1);

  CommonFlags size_f, power_f, epa_f, spa_f, ci_f, hill_f, sim_f;
  auto* mc_size = app.add_subcommand("mc-size", "Rejection frequencies under the null");
  add_common(mc_size, size_f, true);
  auto* mc_power = app.add_subcommand("mc-power", "Rejection frequencies over a delta grid");
  add_common(mc_power, power_f, true);

  EpaFlags epa;
  auto* epa_cmd = app.add_subcommand("epa", "Pairwise equal predictive ability tests");
  add_common(epa_cmd, epa_f, false);
  epa_cmd->add_option("--returns", epa.returns, "Returns CSV (date,return)")->required();
  epa_cmd->add_option("--forecasts", epa.forecasts, "Forecast CSV (date,method1,...)");
  epa_cmd->add_option("--tau", epa.tau, "Quantile level of the VaR forecasts");
  epa_cmd->add_option("--split", epa.split, "First out-of-sample date (YYYY-MM-DD)");
  epa_cmd->add_option("--rw-window", epa.rw_windows, "Rolling-window lengths H for RW-H forecasts");
  epa_cmd->add_flag("--garch", epa.garch, "Add GARCH(1,1)-normal forecasts fitted before --split");

  std::string spa_input;
  auto* spa_cmd = app.add_subcommand("spa", "Subsampled superior predictive ability test");
  add_common(spa_cmd, spa_f, false);
  spa_cmd->add_option("--input", spa_input, "Loss differentials CSV (label,d1,...,dm)")->required();

  std::string ci_input;
  auto* ci_cmd = app.add_subcommand("ci", "Subsampling confidence interval for the mean");
  add_common(ci_cmd, ci_f, false);
  ci_cmd->add_option("--input", ci_input, "Series CSV (label,value)")->required();

  HillFlags hill;
  auto* hill_cmd = app.add_subcommand("hill", "Hill plot data and tail diagnostics");
  add_common(hill_cmd, hill_f, false);
  hill_cmd->add_option("--input", hill.input, "Series CSV (label,value)")->required();
  hill_cmd->add_option("--k-min", hill.k_min, "Smallest k");
  hill_cmd->add_option("--k-max", hill.k_max, "Largest k (default n/10)");
  hill_cmd->add_option("--steps", hill.steps, "Grid points");
  hill_cmd->add_option("--tail-quantile", hill.tail_quantile, "Threshold quantile for p+");

  SimFlags sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate an AR(1) path");
  add_common(sim_cmd, sim_f, false);
  sim_cmd->add_option("--noise", sim.noise, "Noise family");
  sim_cmd->add_option("--kappa", sim.kappa, "Tail index");
  sim_cmd->add_option("--phi", sim.phi, "AR coefficient");
  sim_cmd->add_option("--delta", sim.delta, "Intercept");
  sim_cmd->add_option("--p-plus", sim.p_plus, "Right-tail share (skew-student)");
  sim_cmd->add_option("--n", sim.n, "Sample size");
  sim_cmd->add_option("--burn-in", sim.burn_in, "Burn-in length");
  sim_cmd->add_option("--stream", sim.stream, "Stream id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*mc_size) return run_mc(size_f, false);
    if (*mc_power) return run_mc(power_f, true);
    if (*epa_cmd) return run_epa(epa_f, epa);
    if (*spa_cmd) return run_spa(spa_f, spa_input);
    if (*ci_cmd) return run_ci(ci_f, ci_input);
    if (*hill_cmd) return run_hill(hill_f, hill);
    if (*sim_cmd) return run_simulate(sim_f, sim);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    if (const auto* est = dynamic_cast<const EstimationError*>(&e)) {
      for (const auto& line : est->trace()) std::cerr << "  " << line << '\n';
    }
    return 2;
  }
  return 0;
}
