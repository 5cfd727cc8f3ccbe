#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snpa/dgp.hpp"

namespace snpa {

enum class NoiseFamily { SymmetricStable, AsymmetricStable, Student, SkewStudent, Normal };
enum class McTest { DM, Alg1, AlgC1 };

std::string to_string(NoiseFamily f);
std::string to_string(McTest t);
NoiseFamily parse_noise_family(const std::string& s);
McTest parse_mc_test(const std::string& s);

// Noise for one grid cell. Normal ignores kappa.
NoiseSpec make_noise(NoiseFamily family, double kappa, double p_plus);

// Monte Carlo design over the AR(1) X_t = delta + phi X_{t-1} + Z_t.
//
// Config files are flat `key = value` lines; `#` starts a comment and lists are
// comma separated. Keys:
//   noise         symmetric-stable | asymmetric-stable | student | skew-student | normal
//   kappa         list of tail indices (not allowed for normal noise)
//   n             list of sample sizes
//   delta         list of intercepts; E[X_t] = delta / (1 - phi)
//   phi           AR coefficient
//   p_plus        right-tail share for skew-student noise
//   replications  M
//   level         nominal level
//   tests         list from dm, alg1, algc1
//   seed          master seed
//   burn_in       discarded start-up draws
//   block         subsample block size (default floor(1.5 sqrt(n)))
//   lag           DM lag: auto or an integer
//   workers       worker threads
//   output        CSV path
//   scale         desk (M = 2000, n = 1000,5000) or full (M = 10000,
//                 n = 1000,2000,5000,10000,100000); explicit keys win
// Unknown or repeated keys are errors.
struct ExperimentConfig {
  NoiseFamily noise = NoiseFamily::SymmetricStable;
  std::vector<double> kappas{1.1, 1.3, 1.5, 1.7, 1.9};
  std::vector<std::size_t> sample_sizes{1000, 5000};
  std::vector<double> deltas{0.0};
  double phi = 0.5;
  double p_plus = 0.9;
  std::size_t replications = 2000;
  double level = 0.05;
  std::vector<McTest> tests{McTest::DM, McTest::Alg1};
  std::uint64_t seed = 20250101;
  std::size_t burn_in = kDefaultBurnIn;
  std::optional<std::size_t> block;
  std::optional<std::size_t> lag;  // nullopt: automatic
  std::size_t workers = 1;
  std::string output;

  void validate() const;
};

ExperimentConfig parse_experiment_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_experiment_config(const std::string& path);

struct ExperimentRow {
  double kappa = 0.0;  // +inf for normal noise
  std::size_t n = 0;
  double delta = 0.0;
  McTest test = McTest::DM;
  std::size_t rejections = 0;
  std::size_t replications = 0;
  std::uint64_t seed = 0;

  double reject_pct() const;
  // Binomial standard error sqrt(p(1-p)/M), in percentage points.
  double mc_se() const;
};

// Rejection frequencies over the full (kappa, n, delta, test) grid. Replication
// r uses RNG stream r in every cell, so cells share random numbers and the
// result does not depend on the worker count.
std::vector<ExperimentRow> run_experiment_grid(const ExperimentConfig& cfg);

// Size experiment: every delta must be 0.
std::vector<ExperimentRow> run_rejection_experiment(const ExperimentConfig& cfg);

// Power experiment over the delta grid; a delta of 0 reproduces the size rows.
std::vector<ExperimentRow> run_power_experiment(const ExperimentConfig& cfg);

// Columns kappa,n,delta,test,reject_pct,mc_se,M,seed; mc_se is in percentage
// points.
void write_experiment_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);

}  // namespace snpa
