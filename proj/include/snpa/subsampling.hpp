#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "snpa/stats.hpp"

namespace snpa {

enum class StatisticKind { SelfNormalized, Modified, Centered, Spa };

// Subsample statistics over all q = n - b + 1 overlapping windows, sorted
// ascending.
struct SubsampleDistribution {
  std::vector<double> stats;
  std::size_t n = 0;
  std::size_t b = 0;
  StatisticKind kind = StatisticKind::SelfNormalized;
  std::size_t degenerate_windows = 0;

  std::size_t count() const { return stats.size(); }
};

struct SubsampleConfig {
  std::optional<std::size_t> block;
  double level = 0.05;
  Alternative alternative = Alternative::TwoSidedEqualTailed;
  std::size_t workers = 1;

  void validate(std::size_t n) const;
  std::size_t block_for(std::size_t n) const;
};

// floor(1.5 sqrt(n)) clamped to [2, n-1]; n must be at least 5.
std::size_t default_block(std::size_t n);

// inf{x : L(x) >= y}, i.e. the ceil(y q)-th order statistic of a sorted sample.
double empirical_quantile(std::span<const double> sorted, double y);
double empirical_quantile(const SubsampleDistribution& dist, double y);

SubsampleDistribution subsample_self_norm(std::span<const double> x, std::size_t b,
                                          std::size_t workers = 1);
SubsampleDistribution subsample_modified(std::span<const double> x, std::size_t b,
                                         std::size_t workers = 1);
// Windows of x - mean(x).
SubsampleDistribution subsample_centered(std::span<const double> x, std::size_t b,
                                         std::size_t workers = 1);
// max(max_j T_{i,b,j}, 0) with joint normalization inside each window.
SubsampleDistribution subsample_spa(const LossMatrix& x, std::size_t b, std::size_t workers = 1);

// Self-normalized test with subsampled critical values. The default
// alternative is the equal-tailed two-sided test; the symmetric variant
// compares |T_n| with the (1 - level) quantile of |T_{i,b}|, and the one-sided
// variants use the (1 - level) or level quantile of T_{i,b}.
TestReport epa_test(std::span<const double> x, const SubsampleConfig& cfg = {});

// Symmetric test on |modified statistic| for alternatives with E|X| = inf.
TestReport abs_test(std::span<const double> x, const SubsampleConfig& cfg = {});

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double mean = 0.0;
  std::size_t block_size = 0;
  // Every centered window was all-zero.
  bool degenerate = false;
  // The two quantile-based bounds came out inverted and were swapped.
  bool reordered = false;
};

// Equal-tailed subsampling interval for E[X_t] from mean-centered window
// statistics.
ConfidenceInterval mean_confidence_interval(std::span<const double> x,
                                            const SubsampleConfig& cfg = {});

// One-sided SPA test: reject when V_n exceeds the (1 - level) quantile of the
// windowed V_{i,b}.
TestReport spa_test(const LossMatrix& x, const SubsampleConfig& cfg = {});

}  // namespace snpa
