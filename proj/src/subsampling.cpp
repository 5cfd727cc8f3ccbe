#include "snpa/subsampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "snpa/errors.hpp"
#include "snpa/parallel.hpp"
#include "snpa/prefix.hpp"
#include "summation.hpp"

namespace snpa {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class WindowFn>
SubsampleDistribution collect(std::size_t n, std::size_t b, StatisticKind kind,
                              std::size_t workers, WindowFn&& fn) {
  if (b == 0 || b > n) {
    throw ValidationError("subsampling: block " + std::to_string(b) + " invalid for n = " +
                          std::to_string(n));
  }
  const std::size_t q = n - b + 1;
  SubsampleDistribution d;
  d.n = n;
  d.b = b;
  d.kind = kind;
  d.stats.resize(q);
  std::vector<unsigned char> degenerate(q, 0);
  parallel_for(q, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const WindowStat w = fn(i);
      d.stats[i] = w.value;
      degenerate[i] = w.degenerate ? 1 : 0;
    }
  });
  d.degenerate_windows = static_cast<std::size_t>(std::count(degenerate.begin(), degenerate.end(), 1));
  std::sort(d.stats.begin(), d.stats.end());
  return d;
}

std::vector<double> sorted_abs(const std::vector<double>& v) {
  std::vector<double> a(v.size());
  std::transform(v.begin(), v.end(), a.begin(), [](double x) { return std::abs(x); });
  std::sort(a.begin(), a.end());
  return a;
}

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("nominal level must lie in (0,1)");
}

}  // namespace

std::size_t default_block(std::size_t n) {
  if (n < 5) throw ValidationError("default_block: need n >= 5, got " + std::to_string(n));
  const auto b = static_cast<std::size_t>(std::floor(1.5 * std::sqrt(static_cast<double>(n))));
  return std::clamp<std::size_t>(b, 2, n - 1);
}

void SubsampleConfig::validate(std::size_t n) const {
  check_level(level);
  if (block && !(*block > 1 && *block < n)) {
    throw ValidationError("block size " + std::to_string(*block) + " must satisfy 1 < b < n = " +
                          std::to_string(n));
  }
}

std::size_t SubsampleConfig::block_for(std::size_t n) const {
  validate(n);
  return block ? *block : default_block(n);
}

double empirical_quantile(std::span<const double> sorted, double y) {
  if (sorted.empty()) throw ValidationError("empirical_quantile: empty distribution");
  if (!(y > 0.0 && y <= 1.0)) throw ValidationError("empirical_quantile: level must lie in (0,1]");
  const std::size_t q = sorted.size();
  const double qd = static_cast<double>(q);
  auto k = static_cast<std::size_t>(std::ceil(y * qd));
  k = std::clamp<std::size_t>(k, 1, q);
  while (k > 1 && static_cast<double>(k - 1) / qd >= y) --k;
  while (k < q && static_cast<double>(k) / qd < y) ++k;
  return sorted[k - 1];
}

double empirical_quantile(const SubsampleDistribution& dist, double y) {
  return empirical_quantile(dist.stats, y);
}

SubsampleDistribution subsample_self_norm(std::span<const double> x, std::size_t b,
                                          std::size_t workers) {
  const PrefixTable table(x, b);
  return collect(x.size(), b, StatisticKind::SelfNormalized, workers,
                 [&](std::size_t i) { return window_self_norm(table, i, b); });
}

SubsampleDistribution subsample_modified(std::span<const double> x, std::size_t b,
                                         std::size_t workers) {
  const PrefixTable table(x, b);
  return collect(x.size(), b, StatisticKind::Modified, workers,
                 [&](std::size_t i) { return window_modified(table, i, b); });
}

SubsampleDistribution subsample_centered(std::span<const double> x, std::size_t b,
                                         std::size_t workers) {
  const double mean = detail::compensated_moments(x).sum / static_cast<double>(x.size());
  std::vector<double> centered(x.size());
  std::transform(x.begin(), x.end(), centered.begin(), [&](double v) { return v - mean; });
  const PrefixTable table(centered, b);
  return collect(x.size(), b, StatisticKind::Centered, workers,
                 [&](std::size_t i) { return window_self_norm(table, i, b); });
}

SubsampleDistribution subsample_spa(const LossMatrix& x, std::size_t b, std::size_t workers) {
  std::vector<PrefixTable> columns;
  columns.reserve(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) columns.emplace_back(x.column(j), b);
  const auto norms = x.row_norms_squared();
  const PrefixTable norm_table(norms, b);
  return collect(x.rows(), b, StatisticKind::Spa, workers, [&](std::size_t i) {
    const double g2 = norm_table.sum(i, b);
    if (g2 == 0.0) return WindowStat{0.0, true};
    double best = 0.0;
    for (const auto& c : columns) best = std::max(best, c.sum(i, b));
    return WindowStat{best / std::sqrt(g2), false};
  });
}

TestReport epa_test(std::span<const double> x, const SubsampleConfig& cfg) {
  const std::size_t n = x.size();
  const std::size_t b = cfg.block_for(n);
  TestReport r;
  r.method = Method::SelfNormSubsample;
  r.alternative = cfg.alternative;
  r.nominal_level = cfg.level;
  r.block_size = b;
  r.statistic = self_norm_stat(x);
  const auto dist = subsample_self_norm(x, b, cfg.workers);
  r.degenerate_windows = dist.degenerate_windows;
  const double eta = cfg.level;
  switch (cfg.alternative) {
    case Alternative::TwoSidedEqualTailed:
      r.critical_lower = empirical_quantile(dist, eta / 2.0);
      r.critical_upper = empirical_quantile(dist, 1.0 - eta / 2.0);
      r.reject = r.statistic < r.critical_lower || r.statistic > r.critical_upper;
      break;
    case Alternative::TwoSidedSymmetric: {
      const double c = empirical_quantile(sorted_abs(dist.stats), 1.0 - eta);
      r.critical_lower = -c;
      r.critical_upper = c;
      r.reject = std::abs(r.statistic) > c;
      break;
    }
    case Alternative::Greater:
      r.critical_lower = -kInf;
      r.critical_upper = empirical_quantile(dist, 1.0 - eta);
      r.reject = r.statistic > r.critical_upper;
      break;
    case Alternative::Less:
      r.critical_lower = empirical_quantile(dist, eta);
      r.critical_upper = kInf;
      r.reject = r.statistic < r.critical_lower;
      break;
  }
  return r;
}

TestReport abs_test(std::span<const double> x, const SubsampleConfig& cfg) {
  const std::size_t n = x.size();
  const std::size_t b = cfg.block_for(n);
  TestReport r;
  r.method = Method::ModifiedAbsSubsample;
  r.alternative = Alternative::TwoSidedSymmetric;
  r.nominal_level = cfg.level;
  r.block_size = b;
  r.statistic = modified_stat(x);
  const auto dist = subsample_modified(x, b, cfg.workers);
  r.degenerate_windows = dist.degenerate_windows;
  const double c = empirical_quantile(sorted_abs(dist.stats), 1.0 - cfg.level);
  r.critical_lower = -c;
  r.critical_upper = c;
  r.reject = std::abs(r.statistic) > c;
  return r;
}

ConfidenceInterval mean_confidence_interval(std::span<const double> x, const SubsampleConfig& cfg) {
  const std::size_t n = x.size();
  const std::size_t b = cfg.block_for(n);
  const auto m = detail::compensated_moments(x);
  if (m.sum_squares == 0.0) throw DegenerateError("mean_confidence_interval: all observations are zero");
  ConfidenceInterval ci;
  ci.block_size = b;
  ci.mean = m.sum / static_cast<double>(n);

  const auto dist = subsample_centered(x, b, cfg.workers);
  ci.degenerate = dist.degenerate_windows == dist.count();
  if (ci.degenerate) {
    ci.lower = ci.upper = ci.mean;
    return ci;
  }
  detail::CompensatedSum centered_sq;
  for (double v : x) centered_sq.add((v - ci.mean) * (v - ci.mean));
  const double scale = std::sqrt(centered_sq.value()) / static_cast<double>(n);
  const double lo_q = empirical_quantile(dist, cfg.level / 2.0);
  const double hi_q = empirical_quantile(dist, 1.0 - cfg.level / 2.0);
  // Inverting C_lo <= (S_n - n mu)/gamma_n <= C_hi for mu.
  ci.lower = ci.mean - scale * hi_q;
  ci.upper = ci.mean - scale * lo_q;
  if (ci.lower > ci.upper) {
    std::swap(ci.lower, ci.upper);
    ci.reordered = true;
  }
  return ci;
}

TestReport spa_test(const LossMatrix& x, const SubsampleConfig& cfg) {
  if (x.cols() == 0) throw ValidationError("spa_test: no columns");
  const std::size_t n = x.rows();
  const std::size_t b = cfg.block_for(n);
  TestReport r;
  r.method = Method::SpaSubsample;
  r.alternative = Alternative::Greater;
  r.nominal_level = cfg.level;
  r.block_size = b;
  r.statistic = spa_statistic(x);
  const auto dist = subsample_spa(x, b, cfg.workers);
  r.degenerate_windows = dist.degenerate_windows;
  r.critical_lower = -kInf;
  r.critical_upper = empirical_quantile(dist, 1.0 - cfg.level);
  r.reject = r.statistic > r.critical_upper;
  return r;
}

}  // namespace snpa
