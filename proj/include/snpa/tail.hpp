#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

namespace snpa {

// Hill estimate from the k largest |x|:
// [k^{-1} sum_{i=1}^k log(|x|_(n-i+1) / |x|_(n-k))]^{-1}.
double hill_estimate(std::span<const double> x, std::size_t k);

struct HillPoint {
  std::size_t k;
  double kappa_hat;
};

// Log-spaced k grid from k_min to k_max (duplicates removed). Defaults:
// 10 .. floor(n/10) in 50 steps.
std::vector<std::size_t> hill_k_grid(std::size_t n, std::size_t k_min = 10, std::size_t k_max = 0,
                                     std::size_t steps = 50);
std::vector<HillPoint> hill_plot(std::span<const double> x, std::span<const std::size_t> k_grid);
void write_hill_csv(std::ostream& os, std::span<const HillPoint> points);

// Fraction of positive values among observations with |x| above the empirical
// threshold_quantile of |x|.
double tail_balance_estimate(std::span<const double> x, double threshold_quantile = 0.99);

// Empirical (1 - 1/n)-quantile of |x| as a proxy for a_n.
double normalizing_sequence_estimate(std::span<const double> x);

}  // namespace snpa
