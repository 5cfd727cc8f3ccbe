#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "snpa/dgp.hpp"
#include "snpa/rng.hpp"

namespace snpa {

// Closed forms for the limit xi_kappa / zeta_{kappa/2} of T_n under an AR(1)
// with regularly varying noise (tail index kappa in (1,2), tail balance p+).

// E[xi/zeta] = (p+ - p-) sqrt((1+phi)/(1-phi)) Gamma((1-kappa)/2) / (sqrt(pi) Gamma(1-kappa/2)).
double ar1_limit_mean(double kappa, double phi, double p_plus);

// E[(xi/zeta)^2] = ((1+phi)/(1-phi)) (1 + (p+ - p-)^2 (kappa/2) r^2),
// r = Gamma((1-kappa)/2) / Gamma(1-kappa/2).
double ar1_limit_second_moment(double kappa, double phi, double p_plus);

// (1 + 2 sum_j w_j phi^j)^{-1/2}: scale between the fixed-weight HAC
// statistic and T_n in the limit.
double hac_limit_factor(double phi, std::span<const double> weights);

// c_kappa = Gamma(2-kappa) cos(kappa pi/2) / (1-kappa).
double stable_c_kappa(double kappa);

// Truncated AR(1) spectral tail path Theta_t = Theta_0 phi^t 1(t >= -J),
// stored for t = -J .. horizon.
struct SpectralTailPath {
  int theta0 = 1;
  double phi = 0.0;
  double kappa = 1.5;
  std::size_t jump = 0;     // J
  std::size_t horizon = 0;  // last t stored
  std::vector<double> theta;
  // Q_t = Theta_t / (sum_{t >= -J} |Theta_t|^kappa)^{1/kappa}, with the
  // normalizer evaluated over the untruncated path.
  std::vector<double> q;

  long first_time() const { return -static_cast<long>(jump); }
  double theta_at(long t) const;
};

// Smallest h with phi^(kappa h) < 1e-12 (0 when phi = 0).
std::size_t spectral_horizon(double kappa, double phi);

// Draws J ~ Geometric(1 - phi^kappa) on {0,1,...} and Theta_0 = +-1 with
// probabilities p+/p-. Throws if horizon < spectral_horizon(kappa, phi).
SpectralTailPath sample_spectral_path(double kappa, double phi, double p_plus, std::size_t horizon,
                                      RngStream& stream);

struct ScaleSkewEstimate {
  double scale = 0.0;      // sigma~
  double skew = 0.0;       // beta
  double skew_se = 0.0;    // Monte Carlo standard error of beta
  double scale_se = 0.0;   // Monte Carlo standard error of sigma~
};

// Monte Carlo version of sigma~^kappa = c_kappa E|sum Q_t|^kappa and
// beta = E[(sum Q)_+^kappa - (sum Q)_-^kappa] / E|sum Q|^kappa. Needs at
// least 10^4 paths.
ScaleSkewEstimate stable_scale_skew_mc(double kappa, double phi, double p_plus,
                                       std::size_t n_paths, RngStream& stream);

struct MomentEstimate {
  double mean = 0.0;
  double mean_se = 0.0;
  double second_moment = 0.0;
  double second_moment_se = 0.0;
  std::size_t replications = 0;
};

// Monte Carlo mean and second moment of T_n over replications of `spec`; the
// replication index is the stream id.
MomentEstimate self_norm_moments_mc(const Ar1Spec& spec, std::size_t replications,
                                    std::size_t workers = 1);

}  // namespace snpa
