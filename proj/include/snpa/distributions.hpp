#pragma once

#include "snpa/rng.hpp"

namespace snpa {

// Stable law in the zero-type (Nolan S0) parameterization. For kappa > 1 the
// mean is location - beta_skew * scale * tan(pi * kappa / 2).
struct StableParams {
  double kappa = 2.0;
  double beta_skew = 0.0;
  double scale = 1.0;
  double location = 0.0;

  void validate() const;
  // Right tail-balance weight (1 + beta)/2; only meaningful for kappa < 2.
  double p_plus() const { return 0.5 * (1.0 + beta_skew); }
  double p_minus() const { return 0.5 * (1.0 - beta_skew); }
  // Requires kappa > 1.
  double mean() const;

  static StableParams symmetric(double kappa) { return {kappa, 0.0, 1.0, 0.0}; }
  // Stable(kappa, 4/5, 1, (4/5) tan(kappa pi / 2)): p+ = 0.9, mean zero.
  static StableParams skewed_zero_mean(double kappa);
};

// Fernandez-Steel two-piece Student-t, standardized to mean 0 and variance
// kappa/(kappa-2).
struct SkewStudentParams {
  double kappa = 5.0;
  double p_plus = 0.5;

  void validate() const;
  // gamma = (p+/p-)^(1/(2(1+kappa))); right/left tail ratio is gamma^(2(1+kappa)).
  double skew_factor() const;
};

// Gamma function. Throws DomainError at 0, -1, -2, ...
double gamma_fn(double x);

// Chambers-Mallows-Stuck draw from the S0 stable law. Consumes one uniform
// and one exponential.
double sample_stable(const StableParams& params, RngStream& stream);

// Student-t with kappa > 0 degrees of freedom (not rescaled).
double sample_student(double kappa, RngStream& stream);

// Unstandardized two-piece draw: gamma |T| with probability gamma^2/(1+gamma^2),
// else -|T|/gamma. Needs only kappa > 0 and p_plus in (0,1).
double sample_two_piece_student(const SkewStudentParams& params, RngStream& stream);

// Standardized skewed Student-t. Consumes exactly the variates of
// sample_student, so p_plus = 0.5 reproduces it draw for draw.
double sample_skew_student(const SkewStudentParams& params, RngStream& stream);

}  // namespace snpa
