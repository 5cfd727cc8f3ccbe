#include "snpa/distributions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "snpa/errors.hpp"

namespace snpa {

using std::numbers::pi;

void StableParams::validate() const {
  if (!(kappa > 0.0 && kappa <= 2.0)) {
    throw ValidationError("StableParams: kappa must lie in (0, 2], got " + std::to_string(kappa));
  }
  if (!(beta_skew >= -1.0 && beta_skew <= 1.0)) {
    throw ValidationError("StableParams: beta_skew must lie in [-1, 1]");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ValidationError("StableParams: scale must be positive");
  }
  if (!std::isfinite(location)) throw ValidationError("StableParams: location must be finite");
}

double StableParams::mean() const {
  if (!(kappa > 1.0)) throw DomainError("StableParams::mean: mean undefined for kappa <= 1");
  return location - beta_skew * scale * std::tan(pi * kappa / 2.0);
}

StableParams StableParams::skewed_zero_mean(double kappa) {
  return {kappa, 0.8, 1.0, 0.8 * std::tan(kappa * pi / 2.0)};
}

void SkewStudentParams::validate() const {
  if (!(kappa > 2.0)) {
    throw DomainError("SkewStudentParams: standardization needs kappa > 2, got " +
                      std::to_string(kappa));
  }
  if (!(p_plus > 0.0 && p_plus < 1.0)) {
    throw ValidationError("SkewStudentParams: p_plus must lie in (0, 1)");
  }
}

double SkewStudentParams::skew_factor() const {
  return std::pow(p_plus / (1.0 - p_plus), 1.0 / (2.0 * (1.0 + kappa)));
}

double gamma_fn(double x) {
  if (std::isnan(x)) throw DomainError("gamma_fn: NaN argument");
  if (x <= 0.0 && x == std::nearbyint(x)) {
    throw DomainError("gamma_fn: pole at " + std::to_string(x));
  }
  return std::tgamma(x);
}

double sample_stable(const StableParams& params, RngStream& stream) {
  const double alpha = params.kappa;
  const double beta = params.beta_skew;
  const double v = pi * (stream.uniform() - 0.5);
  const double w = stream.exponential();

  double z0;
  if (alpha == 1.0) {
    const double h = pi / 2.0 + beta * v;
    z0 = (2.0 / pi) * (h * std::tan(v) - beta * std::log((pi / 2.0) * w * std::cos(v) / h));
  } else {
    const double t = beta * std::tan(pi * alpha / 2.0);
    const double b = std::atan(t) / alpha;
    const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
    const double av = alpha * (v + b);
    const double z1 = s * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
                      std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
    z0 = z1 - t;
  }
  return params.scale * z0 + params.location;
}

namespace {

// |T| for Student-t(kappa) followed by one uniform for the sign.
struct StudentDraw {
  double magnitude;
  double sign_uniform;
};

StudentDraw draw_student(double kappa, RngStream& stream) {
  if (!(kappa > 0.0)) throw DomainError("Student-t: degrees of freedom must be positive");
  const double z = stream.normal();
  const double g = stream.gamma(kappa / 2.0);
  const double magnitude = std::abs(z) / std::sqrt(2.0 * g / kappa);
  return {magnitude, stream.uniform()};
}

}  // namespace

double sample_student(double kappa, RngStream& stream) {
  const auto d = draw_student(kappa, stream);
  return d.sign_uniform < 0.5 ? d.magnitude : -d.magnitude;
}

double sample_two_piece_student(const SkewStudentParams& params, RngStream& stream) {
  if (!(params.p_plus > 0.0 && params.p_plus < 1.0)) {
    throw DomainError("skewed Student-t: p_plus must lie in (0,1)");
  }
  const double g = params.skew_factor();
  const auto d = draw_student(params.kappa, stream);
  const double p_positive = g * g / (1.0 + g * g);
  return d.sign_uniform < p_positive ? g * d.magnitude : -d.magnitude / g;
}

double sample_skew_student(const SkewStudentParams& params, RngStream& stream) {
  params.validate();
  const double k = params.kappa;
  const double g = params.skew_factor();
  const double x = sample_two_piece_student(params, stream);
  if (g == 1.0) return x;

  // E|T| for Student-t(k), k > 1.
  const double abs_mean = 2.0 * std::sqrt(k) *
                          std::exp(std::lgamma((k + 1.0) / 2.0) - std::lgamma(k / 2.0)) /
                          (std::sqrt(pi) * (k - 1.0));
  const double target_var = k / (k - 2.0);
  const double mean = abs_mean * (g - 1.0 / g);
  const double second = target_var * (g * g * g + 1.0 / (g * g * g)) / (g + 1.0 / g);
  const double var = second - mean * mean;
  return (x - mean) * std::sqrt(target_var / var);
}

}  // namespace snpa
