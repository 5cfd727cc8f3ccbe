#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace snpa::detail {

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  std::size_t evaluations;
  bool converged;
};

// Minimizes f with the standard reflection/expansion/contraction/shrink
// steps. Converges when the spread of simplex values falls below `ftol`
// (relative to |best| + ftol).
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start, double step,
                                    std::size_t max_evaluations, double ftol) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(dim + 1);
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : HUGE_VAL;
  };
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  bool converged = false;
  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const double best = values[order.front()];
    const double worst = values[order.back()];
    if (std::abs(worst - best) <= ftol * (std::abs(best) + ftol)) {
      converged = true;
      break;
    }
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[order[k]][i];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    auto along = [&](double t) {
      std::vector<double> p(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        p[i] = centroid[i] + t * (simplex[order.back()][i] - centroid[i]);
      }
      return p;
    };
    const std::size_t w = order.back();
    const double second_worst = values[order[dim - 1]];
    auto reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr < best) {
      auto expanded = along(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[w] = std::move(expanded);
        values[w] = fe;
      } else {
        simplex[w] = std::move(reflected);
        values[w] = fr;
      }
    } else if (fr < second_worst) {
      simplex[w] = std::move(reflected);
      values[w] = fr;
    } else {
      const bool outside = fr < worst;
      auto contracted = along(outside ? -0.5 : 0.5);
      const double fc = eval(contracted);
      if (fc < (outside ? fr : worst)) {
        simplex[w] = std::move(contracted);
        values[w] = fc;
      } else {
        const auto& b = simplex[order.front()];
        for (std::size_t k = 1; k <= dim; ++k) {
          auto& p = simplex[order[k]];
          for (std::size_t i = 0; i < dim; ++i) p[i] = b[i] + 0.5 * (p[i] - b[i]);
          values[order[k]] = eval(p);
        }
      }
    }
  }
  const auto best_it = std::min_element(values.begin(), values.end());
  return {simplex[static_cast<std::size_t>(best_it - values.begin())], *best_it, evals, converged};
}

}  // namespace snpa::detail
