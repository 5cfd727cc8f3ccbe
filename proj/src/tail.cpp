#include "snpa/tail.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "snpa/errors.hpp"
#include "snpa/losses.hpp"

namespace snpa {
namespace {

std::vector<double> abs_values(std::span<const double> x) {
  std::vector<double> a(x.size());
  std::transform(x.begin(), x.end(), a.begin(), [](double v) { return std::abs(v); });
  return a;
}

// Hill estimate from |x| sorted descending.
double hill_sorted(const std::vector<double>& desc, std::size_t k) {
  const double threshold = desc[k];
  if (threshold == 0.0) {
    throw DegenerateError("hill_estimate: order statistic |x|_(n-k) is zero for k = " +
                          std::to_string(k));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::log(desc[i] / threshold);
  if (s == 0.0) throw DegenerateError("hill_estimate: top-k values are all tied");
  return static_cast<double>(k) / s;
}

void check_k(std::size_t k, std::size_t n) {
  if (k < 2 || k >= n) {
    throw ValidationError("hill_estimate: k = " + std::to_string(k) + " must satisfy 2 <= k < n = " +
                          std::to_string(n));
  }
}

}  // namespace

double hill_estimate(std::span<const double> x, std::size_t k) {
  check_k(k, x.size());
  auto a = abs_values(x);
  std::partial_sort(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k + 1), a.end(),
                    std::greater<>());
  return hill_sorted(a, k);
}

std::vector<std::size_t> hill_k_grid(std::size_t n, std::size_t k_min, std::size_t k_max,
                                     std::size_t steps) {
  if (k_max == 0) k_max = n / 10;
  k_max = std::min(k_max, n - 1);
  k_min = std::max<std::size_t>(k_min, 2);
  if (k_min > k_max || steps == 0) {
    throw ValidationError("hill_k_grid: empty grid for n = " + std::to_string(n));
  }
  std::vector<std::size_t> grid;
  const double lo = std::log(static_cast<double>(k_min));
  const double hi = std::log(static_cast<double>(k_max));
  for (std::size_t i = 0; i < steps; ++i) {
    const double f = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
    const auto k = static_cast<std::size_t>(std::lround(std::exp(lo + f * (hi - lo))));
    const auto clamped = std::clamp(k, k_min, k_max);
    if (grid.empty() || grid.back() != clamped) grid.push_back(clamped);
  }
  return grid;
}

std::vector<HillPoint> hill_plot(std::span<const double> x, std::span<const std::size_t> k_grid) {
  auto a = abs_values(x);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::vector<HillPoint> out;
  out.reserve(k_grid.size());
  for (std::size_t k : k_grid) {
    check_k(k, x.size());
    out.push_back({k, hill_sorted(a, k)});
  }
  return out;
}

void write_hill_csv(std::ostream& os, std::span<const HillPoint> points) {
  os << "k,kappa_hat\n";
  const auto old = os.precision(10);
  for (const auto& p : points) os << p.k << ',' << p.kappa_hat << '\n';
  os.precision(old);
}

double tail_balance_estimate(std::span<const double> x, double threshold_quantile) {
  if (x.empty()) throw ValidationError("tail_balance_estimate: empty sample");
  if (!(threshold_quantile > 0.0 && threshold_quantile < 1.0)) {
    throw ValidationError("tail_balance_estimate: threshold quantile must lie in (0,1)");
  }
  const auto a = abs_values(x);
  const double threshold = empirical_quantile_lower(a, threshold_quantile);
  std::size_t exceed = 0;
  std::size_t positive = 0;
  for (double v : x) {
    if (std::abs(v) > threshold) {
      ++exceed;
      if (v > 0.0) ++positive;
    }
  }
  if (exceed == 0) throw DegenerateError("tail_balance_estimate: no exceedances above threshold");
  return static_cast<double>(positive) / static_cast<double>(exceed);
}

double normalizing_sequence_estimate(std::span<const double> x) {
  if (x.size() < 10) throw ValidationError("normalizing_sequence_estimate: need n >= 10");
  const double n = static_cast<double>(x.size());
  return empirical_quantile_lower(abs_values(x), 1.0 - 1.0 / n);
}

}  // namespace snpa
