#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "snpa/distributions.hpp"
#include "snpa/rng.hpp"
#include "snpa/time_series.hpp"

namespace snpa {

struct StudentNoise {
  double kappa = 5.0;
};
struct NormalNoise {
  double mean = 0.0;
  double sd = 1.0;
};
// Degenerate distribution; draws consume no random variates.
struct ConstantNoise {
  double value = 0.0;
};

using NoiseSpec =
    std::variant<StableParams, StudentNoise, SkewStudentParams, NormalNoise, ConstantNoise>;

void validate_noise(const NoiseSpec& noise);
double draw_noise(const NoiseSpec& noise, RngStream& stream);
std::string describe_noise(const NoiseSpec& noise);

inline constexpr std::size_t kDefaultBurnIn = 10000;

// X_t = delta + phi X_{t-1} + Z_t started at X_{-burn_in} = 0. Burn-in
// innovations come from a stream derived from (seed, stream_id); the observed
// Z_1..Z_n are the first draws of (seed, stream_id) itself, so they do not
// depend on burn_in.
struct Ar1Spec {
  double delta = 0.0;
  double phi = 0.5;
  NoiseSpec noise = StableParams::symmetric(1.5);
  std::size_t n = 1000;
  std::size_t burn_in = kDefaultBurnIn;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  bool record_noise = false;

  void validate() const;
};

// X_t = A_t X_{t-1} + B_t started at X_{-burn_in} = initial. A is drawn before
// B at each step.
struct SreSpec {
  NoiseSpec a = ConstantNoise{0.5};
  NoiseSpec b = NormalNoise{};
  std::size_t n = 1000;
  std::size_t burn_in = kDefaultBurnIn;
  double initial = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  bool record_noise = false;

  void validate() const;
};

struct Simulation {
  TimeSeries series;
  // Value just before the first returned observation (X_0).
  double initial = 0.0;
  // Innovations for the returned period; filled only when record_noise is set.
  // For an SRE `noise` holds B_t and `multipliers` holds A_t.
  std::vector<double> noise;
  std::vector<double> multipliers;
  std::optional<std::string> warning;
};

Simulation simulate_ar1(const Ar1Spec& spec);
Simulation simulate_sre(const SreSpec& spec);

// Same as simulate_ar1 but reusing `out` to avoid allocations in Monte Carlo
// loops; no noise recording.
void simulate_ar1_into(const Ar1Spec& spec, std::vector<double>& out);

struct LogMomentEstimate {
  double mean;
  double std_error;
};
// Monte Carlo estimate of E[log|A|] from `draws` draws.
LogMomentEstimate estimate_log_abs_moment(const NoiseSpec& a, std::size_t draws,
                                          RngStream& stream);

}  // namespace snpa
