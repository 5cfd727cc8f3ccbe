#include "snpa/limit_lab.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "snpa/distributions.hpp"
#include "snpa/errors.hpp"
#include "snpa/parallel.hpp"
#include "snpa/stats.hpp"

namespace snpa {

using std::numbers::pi;

namespace {

void check_ar1_limit_args(double kappa, double phi, double p_plus) {
  if (!(kappa > 1.0 && kappa < 2.0)) {
    throw DomainError("AR(1) limit moments need kappa in (1,2), got " + std::to_string(kappa));
  }
  if (!(phi >= 0.0 && phi < 1.0)) throw DomainError("AR(1) limit moments need phi in [0,1)");
  if (!(p_plus >= 0.0 && p_plus <= 1.0)) throw DomainError("p_plus must lie in [0,1]");
}

double gamma_ratio(double kappa) { return gamma_fn((1.0 - kappa) / 2.0) / gamma_fn(1.0 - kappa / 2.0); }

}  // namespace

double ar1_limit_mean(double kappa, double phi, double p_plus) {
  check_ar1_limit_args(kappa, phi, p_plus);
  const double balance = 2.0 * p_plus - 1.0;
  return balance * std::sqrt((1.0 + phi) / (1.0 - phi)) * gamma_ratio(kappa) / std::sqrt(pi);
}

double ar1_limit_second_moment(double kappa, double phi, double p_plus) {
  check_ar1_limit_args(kappa, phi, p_plus);
  const double balance = 2.0 * p_plus - 1.0;
  const double r = gamma_ratio(kappa);
  return (1.0 + phi) / (1.0 - phi) * (1.0 + balance * balance * (kappa / 2.0) * r * r);
}

double hac_limit_factor(double phi, std::span<const double> weights) {
  double radicand = 1.0;
  double power = 1.0;
  for (double w : weights) {
    power *= phi;
    radicand += 2.0 * w * power;
  }
  if (!(radicand > 0.0)) {
    throw DomainError("hac_limit_factor: 1 + 2 sum w_j phi^j = " + std::to_string(radicand) +
                      " is not positive");
  }
  return 1.0 / std::sqrt(radicand);
}

double stable_c_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa < 2.0) || kappa == 1.0) {
    throw DomainError("c_kappa: kappa must lie in (0,1) or (1,2)");
  }
  return gamma_fn(2.0 - kappa) * std::cos(kappa * pi / 2.0) / (1.0 - kappa);
}

double SpectralTailPath::theta_at(long t) const {
  if (t < first_time() || t > static_cast<long>(horizon)) return 0.0;
  return theta[static_cast<std::size_t>(t - first_time())];
}

std::size_t spectral_horizon(double kappa, double phi) {
  if (phi == 0.0) return 0;
  // phi^(kappa h) < 1e-12  <=>  h > log(1e-12) / (kappa log phi)
  const double bound = std::log(1e-12) / (kappa * std::log(phi));
  auto h = static_cast<std::size_t>(std::floor(bound)) + 1;
  while (h > 0 && std::pow(phi, kappa * static_cast<double>(h - 1)) < 1e-12) --h;
  while (!(std::pow(phi, kappa * static_cast<double>(h)) < 1e-12)) ++h;
  return h;
}

SpectralTailPath sample_spectral_path(double kappa, double phi, double p_plus, std::size_t horizon,
                                      RngStream& stream) {
  if (!(kappa > 0.0 && kappa < 2.0)) throw DomainError("spectral path: kappa must lie in (0,2)");
  if (!(phi >= 0.0 && phi < 1.0)) throw DomainError("spectral path: phi must lie in [0,1)");
  if (!(p_plus >= 0.0 && p_plus <= 1.0)) throw DomainError("spectral path: p_plus must lie in [0,1]");
  if (horizon < spectral_horizon(kappa, phi)) {
    throw ValidationError("spectral path: horizon " + std::to_string(horizon) +
                          " too small, need at least " +
                          std::to_string(spectral_horizon(kappa, phi)));
  }
  SpectralTailPath path;
  path.kappa = kappa;
  path.phi = phi;
  path.horizon = horizon;
  const double rho = std::pow(phi, kappa);  // P(J > j) = rho^(j+1)
  const double u_jump = stream.uniform();
  const double u_sign = stream.uniform();
  path.jump = rho == 0.0 ? 0 : static_cast<std::size_t>(std::floor(std::log(u_jump) / std::log(rho)));
  path.theta0 = u_sign < p_plus ? 1 : -1;

  const std::size_t len = path.jump + horizon + 1;
  path.theta.resize(len);
  path.q.resize(len);
  // sum_{t >= -J} phi^(kappa t) = phi^(-kappa J) / (1 - phi^kappa)
  const double norm_kappa =
      rho == 0.0 ? 1.0 : std::pow(phi, -kappa * static_cast<double>(path.jump)) / (1.0 - rho);
  const double norm = std::pow(norm_kappa, 1.0 / kappa);
  for (std::size_t i = 0; i < len; ++i) {
    const long t = static_cast<long>(i) - static_cast<long>(path.jump);
    const double mag = t == 0 ? 1.0 : std::pow(phi, static_cast<double>(t));
    path.theta[i] = path.theta0 * mag;
    path.q[i] = path.theta[i] / norm;
  }
  return path;
}

ScaleSkewEstimate stable_scale_skew_mc(double kappa, double phi, double p_plus,
                                       std::size_t n_paths, RngStream& stream) {
  if (n_paths < 10000) throw ValidationError("stable_scale_skew_mc: need at least 10^4 paths");
  const double c_kappa = stable_c_kappa(kappa);
  const std::size_t horizon = spectral_horizon(kappa, phi);
  double sum_signed = 0.0, sum_abs = 0.0;
  double sum_signed_sq = 0.0, sum_abs_sq = 0.0, sum_cross = 0.0;
  for (std::size_t p = 0; p < n_paths; ++p) {
    const auto path = sample_spectral_path(kappa, phi, p_plus, horizon, stream);
    double s = 0.0;
    for (double v : path.q) s += v;
    const double a = std::pow(std::abs(s), kappa);
    const double signed_part = s >= 0.0 ? a : -a;
    sum_signed += signed_part;
    sum_abs += a;
    sum_signed_sq += signed_part * signed_part;
    sum_abs_sq += a * a;
    sum_cross += signed_part * a;
  }
  const double n = static_cast<double>(n_paths);
  const double mean_signed = sum_signed / n;
  const double mean_abs = sum_abs / n;
  ScaleSkewEstimate est;
  est.skew = mean_signed / mean_abs;
  est.scale = std::pow(c_kappa * mean_abs, 1.0 / kappa);
  // Delta method for the ratio and for the power transform.
  const double var_signed = sum_signed_sq / n - mean_signed * mean_signed;
  const double var_abs = std::max(0.0, sum_abs_sq / n - mean_abs * mean_abs);
  const double cov = sum_cross / n - mean_signed * mean_abs;
  const double b = est.skew;
  const double ratio_var = (var_signed - 2.0 * b * cov + b * b * var_abs) / (mean_abs * mean_abs);
  est.skew_se = std::sqrt(std::max(0.0, ratio_var) / n);
  est.scale_se = est.scale / kappa * std::sqrt(var_abs / n) / mean_abs;
  return est;
}

MomentEstimate self_norm_moments_mc(const Ar1Spec& spec, std::size_t replications,
                                    std::size_t workers) {
  spec.validate();
  if (replications < 2) throw ValidationError("self_norm_moments_mc: need at least two replications");
  std::vector<double> stats(replications);
  parallel_for(replications, workers, [&](std::size_t begin, std::size_t end) {
    std::vector<double> x;
    Ar1Spec local = spec;
    for (std::size_t r = begin; r < end; ++r) {
      local.stream_id = r;
      simulate_ar1_into(local, x);
      stats[r] = self_norm_stat(x);
    }
  });
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (double t : stats) {
    s1 += t;
    s2 += t * t;
    s4 += t * t * t * t;
  }
  const double m = static_cast<double>(replications);
  MomentEstimate e;
  e.replications = replications;
  e.mean = s1 / m;
  e.second_moment = s2 / m;
  e.mean_se = std::sqrt(std::max(0.0, e.second_moment - e.mean * e.mean) / (m - 1.0));
  e.second_moment_se =
      std::sqrt(std::max(0.0, s4 / m - e.second_moment * e.second_moment) / (m - 1.0));
  return e;
}

}  // namespace snpa
