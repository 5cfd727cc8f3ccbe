#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace snpa::testing {

struct MeanSe {
  double mean;
  double se;
};

inline MeanSe mean_se(std::span<const double> v) {
  double s = 0.0, s2 = 0.0;
  for (double x : v) s += x;
  const double n = static_cast<double>(v.size());
  const double m = s / n;
  for (double x : v) s2 += (x - m) * (x - m);
  return {m, std::sqrt(s2 / (n - 1.0) / n)};
}

inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace snpa::testing
