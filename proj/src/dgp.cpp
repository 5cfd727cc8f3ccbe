#include "snpa/dgp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "snpa/errors.hpp"

namespace snpa {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::uint64_t kStationarityTag = 0x5eed5eed0a11ce55ULL;
// Burn-in innovations come from their own stream, drawn backward in time
// (Z_0, Z_{-1}, ...), so every innovation is tied to its time index whatever
// the burn-in length.
constexpr std::uint64_t kBurnInTag = 0xb0a2d1f7c3e59a41ULL;

}  // namespace

void validate_noise(const NoiseSpec& noise) {
  std::visit(Overloaded{
                 [](const StableParams& p) { p.validate(); },
                 [](const StudentNoise& p) {
                   if (!(p.kappa > 0.0)) throw ValidationError("Student noise: kappa must be > 0");
                 },
                 [](const SkewStudentParams& p) { p.validate(); },
                 [](const NormalNoise& p) {
                   if (!(p.sd >= 0.0) || !std::isfinite(p.mean)) {
                     throw ValidationError("Normal noise: sd must be >= 0");
                   }
                 },
                 [](const ConstantNoise& p) {
                   if (!std::isfinite(p.value)) throw ValidationError("Constant noise: non-finite");
                 },
             },
             noise);
}

double draw_noise(const NoiseSpec& noise, RngStream& stream) {
  return std::visit(Overloaded{
                        [&](const StableParams& p) { return sample_stable(p, stream); },
                        [&](const StudentNoise& p) { return sample_student(p.kappa, stream); },
                        [&](const SkewStudentParams& p) { return sample_skew_student(p, stream); },
                        [&](const NormalNoise& p) { return p.mean + p.sd * stream.normal(); },
                        [](const ConstantNoise& p) { return p.value; },
                    },
                    noise);
}

std::string describe_noise(const NoiseSpec& noise) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const StableParams& p) {
                   os << "Stable(" << p.kappa << "," << p.beta_skew << "," << p.scale << ","
                      << p.location << ")";
                 },
                 [&](const StudentNoise& p) { os << "Student(" << p.kappa << ")"; },
                 [&](const SkewStudentParams& p) {
                   os << "Skt(" << p.kappa << ",p+=" << p.p_plus << ")";
                 },
                 [&](const NormalNoise& p) { os << "N(" << p.mean << "," << p.sd << ")"; },
                 [&](const ConstantNoise& p) { os << "Const(" << p.value << ")"; },
             },
             noise);
  return os.str();
}

void Ar1Spec::validate() const {
  if (!(phi >= 0.0 && phi < 1.0)) throw ValidationError("Ar1Spec: phi must lie in [0, 1)");
  if (!std::isfinite(delta)) throw ValidationError("Ar1Spec: delta must be finite");
  if (n == 0) throw ValidationError("Ar1Spec: n must be positive");
  validate_noise(noise);
}

void SreSpec::validate() const {
  if (n == 0) throw ValidationError("SreSpec: n must be positive");
  if (!std::isfinite(initial)) throw ValidationError("SreSpec: initial value must be finite");
  validate_noise(a);
  validate_noise(b);
}

LogMomentEstimate estimate_log_abs_moment(const NoiseSpec& a, std::size_t draws,
                                          RngStream& stream) {
  if (const auto* c = std::get_if<ConstantNoise>(&a)) {
    return {std::log(std::abs(c->value)), 0.0};
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double l = std::log(std::abs(draw_noise(a, stream)));
    sum += l;
    sum_sq += l * l;
  }
  const double m = sum / static_cast<double>(draws);
  const double var = std::max(0.0, sum_sq / static_cast<double>(draws) - m * m);
  return {m, std::sqrt(var / static_cast<double>(draws))};
}

namespace {

// The recursion is written as phi * x + (delta + z) so that an SRE with
// A = phi and B = delta + Z produces bit-identical output.
inline double ar1_step(double delta, double phi, double prev, double z) {
  return phi * prev + (delta + z);
}

void check_finite(double x, std::size_t step) {
  if (!std::isfinite(x)) {
    throw SimulationError("non-finite value in recursion at step " + std::to_string(step), step);
  }
}

// Runs the burn-in from X_{-burn_in} = 0 and returns X_0.
double ar1_burn_in(const Ar1Spec& spec) {
  thread_local std::vector<double> z;
  RngStream burn(spec.seed ^ kBurnInTag, spec.stream_id);
  z.resize(spec.burn_in);
  for (auto& v : z) v = draw_noise(spec.noise, burn);
  double x = 0.0;
  for (std::size_t k = spec.burn_in; k-- > 0;) {
    x = ar1_step(spec.delta, spec.phi, x, z[k]);
    check_finite(x, spec.burn_in - 1 - k);
  }
  return x;
}

}  // namespace

void simulate_ar1_into(const Ar1Spec& spec, std::vector<double>& out) {
  RngStream stream(spec.seed, spec.stream_id);
  out.resize(spec.n);
  double x = ar1_burn_in(spec);
  for (std::size_t t = 0; t < spec.n; ++t) {
    x = ar1_step(spec.delta, spec.phi, x, draw_noise(spec.noise, stream));
    check_finite(x, spec.burn_in + t);
    out[t] = x;
  }
}

Simulation simulate_ar1(const Ar1Spec& spec) {
  spec.validate();
  RngStream stream(spec.seed, spec.stream_id);
  Simulation sim;
  sim.series.values.resize(spec.n);
  if (spec.record_noise) sim.noise.resize(spec.n);
  double x = ar1_burn_in(spec);
  sim.initial = x;
  for (std::size_t t = 0; t < spec.n; ++t) {
    const double z = draw_noise(spec.noise, stream);
    x = ar1_step(spec.delta, spec.phi, x, z);
    check_finite(x, spec.burn_in + t);
    sim.series.values[t] = x;
    if (spec.record_noise) sim.noise[t] = z;
  }
  return sim;
}

Simulation simulate_sre(const SreSpec& spec) {
  spec.validate();
  Simulation sim;

  RngStream check_stream(spec.seed ^ kStationarityTag, spec.stream_id);
  const auto est = estimate_log_abs_moment(spec.a, 10000, check_stream);
  if (est.mean - 2.0 * est.std_error > 0.0) {
    throw ValidationError("SreSpec: E[log|A|] estimated at " + std::to_string(est.mean) +
                          " > 0, no stationary solution");
  }
  if (est.mean + 2.0 * est.std_error >= 0.0) {
    sim.warning = "E[log|A|] estimate " + std::to_string(est.mean) +
                  " is within two standard errors of 0; stationarity is doubtful";
  }

  RngStream burn(spec.seed ^ kBurnInTag, spec.stream_id);
  RngStream stream(spec.seed, spec.stream_id);
  sim.series.values.resize(spec.n);
  if (spec.record_noise) {
    sim.noise.resize(spec.n);
    sim.multipliers.resize(spec.n);
  }
  std::vector<double> burn_a(spec.burn_in), burn_b(spec.burn_in);
  for (std::size_t k = 0; k < spec.burn_in; ++k) {
    burn_a[k] = draw_noise(spec.a, burn);
    burn_b[k] = draw_noise(spec.b, burn);
  }
  double x = spec.initial;
  for (std::size_t k = spec.burn_in; k-- > 0;) {
    x = burn_a[k] * x + burn_b[k];
    check_finite(x, spec.burn_in - 1 - k);
  }
  sim.initial = x;
  for (std::size_t t = 0; t < spec.n; ++t) {
    const double a = draw_noise(spec.a, stream);
    const double b = draw_noise(spec.b, stream);
    x = a * x + b;
    check_finite(x, spec.burn_in + t);
    sim.series.values[t] = x;
    if (spec.record_noise) {
      sim.multipliers[t] = a;
      sim.noise[t] = b;
    }
  }
  return sim;
}

}  // namespace snpa
