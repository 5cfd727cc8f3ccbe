#include "snpa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "snpa/errors.hpp"
#include "snpa/losses.hpp"
#include "summation.hpp"

namespace snpa {

double self_norm_stat(std::span<const double> x) {
  if (x.empty()) throw ValidationError("self_norm_stat: empty sample");
  const auto m = detail::compensated_moments(x);
  if (m.sum_squares == 0.0) throw DegenerateError("self_norm_stat: all observations are zero");
  return m.sum / std::sqrt(m.sum_squares);
}

double modified_stat(std::span<const double> x) {
  if (x.empty()) throw ValidationError("modified_stat: empty sample");
  const auto m = detail::compensated_moments(x);
  if (m.sum_squares == 0.0) throw DegenerateError("modified_stat: all observations are zero");
  return (m.sum_abs / static_cast<double>(x.size())) * (m.sum / std::sqrt(m.sum_squares));
}

std::size_t newey_west_auto_lag(std::size_t n) {
  return static_cast<std::size_t>(
      std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

std::vector<double> bartlett_weights(std::size_t q) {
  std::vector<double> w(q);
  for (std::size_t j = 1; j <= q; ++j) {
    w[j - 1] = 1.0 - static_cast<double>(j) / static_cast<double>(q + 1);
  }
  return w;
}

HacEstimate hac_variance(std::span<const double> x, std::span<const double> weights, bool center) {
  const std::size_t n = x.size();
  const std::size_t q = weights.size();
  if (n == 0) throw ValidationError("hac_variance: empty sample");
  if (q >= n) {
    throw ValidationError("hac_variance: lag " + std::to_string(q) + " must be below n = " +
                          std::to_string(n));
  }
  double mean = 0.0;
  if (center) mean = detail::compensated_moments(x).sum / static_cast<double>(n);

  auto autocov = [&](std::size_t j) {
    detail::CompensatedSum s;
    for (std::size_t t = 0; t + j < n; ++t) s.add((x[t] - mean) * (x[t + j] - mean));
    return s.value() / static_cast<double>(n);
  };
  double v = autocov(0);
  for (std::size_t j = 1; j <= q; ++j) v += 2.0 * weights[j - 1] * autocov(j);
  return {v, v < 0.0};
}

double dm_statistic(std::span<const double> x, std::optional<std::size_t> lag) {
  const std::size_t n = x.size();
  if (n < 2) throw ValidationError("dm_statistic: need at least two observations");
  const std::size_t q = lag.value_or(newey_west_auto_lag(n));
  const auto w = bartlett_weights(q);
  const auto v = hac_variance(x, w, true);
  if (!(v.value > 0.0)) throw DegenerateError("dm_statistic: zero long-run variance estimate");
  const double s = detail::compensated_moments(x).sum;
  return s / (std::sqrt(static_cast<double>(n)) * std::sqrt(v.value));
}

double hac_statistic(std::span<const double> x, std::span<const double> weights) {
  const auto v = hac_variance(x, weights, false);
  if (!(v.value > 0.0)) throw DegenerateError("hac_statistic: non-positive variance estimate");
  const double s = detail::compensated_moments(x).sum;
  return s / (std::sqrt(static_cast<double>(x.size())) * std::sqrt(v.value));
}

LossMatrix LossMatrix::from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) throw ValidationError("LossMatrix: no columns");
  const std::size_t n = columns.front().size();
  LossMatrix m(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n) throw ValidationError("LossMatrix: columns differ in length");
    std::copy(columns[j].begin(), columns[j].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(j * n));
  }
  return m;
}

std::vector<double> LossMatrix::row_norms_squared() const {
  std::vector<double> r(rows_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    const auto c = column(j);
    for (std::size_t t = 0; t < rows_; ++t) r[t] += c[t] * c[t];
  }
  return r;
}

std::vector<double> spa_t_vector(const LossMatrix& x) {
  if (x.rows() == 0 || x.cols() == 0) throw ValidationError("spa_statistic: empty matrix");
  detail::CompensatedSum total_sq;
  for (double r : x.row_norms_squared()) total_sq.add(r);
  const double gamma2 = total_sq.value();
  if (gamma2 == 0.0) throw DegenerateError("spa_statistic: all entries are zero");
  const double gamma = std::sqrt(gamma2);
  std::vector<double> t(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    t[j] = detail::compensated_moments(x.column(j)).sum / gamma;
  }
  return t;
}

double spa_statistic(const LossMatrix& x) {
  const auto t = spa_t_vector(x);
  return std::max(0.0, *std::max_element(t.begin(), t.end()));
}

std::string to_string(Method m) {
  switch (m) {
    case Method::DM: return "DM";
    case Method::SelfNormSubsample: return "SelfNorm-Subsample";
    case Method::ModifiedAbsSubsample: return "ModifiedAbs-Subsample";
    case Method::SpaSubsample: return "SPA-Subsample";
  }
  return "?";
}

std::string to_string(Alternative a) {
  switch (a) {
    case Alternative::TwoSidedEqualTailed: return "two-sided-equal-tailed";
    case Alternative::TwoSidedSymmetric: return "two-sided-symmetric";
    case Alternative::Greater: return "greater";
    case Alternative::Less: return "less";
  }
  return "?";
}

TestReport dm_test(std::span<const double> x, std::optional<std::size_t> lag, double level) {
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("dm_test: level must lie in (0,1)");
  TestReport r;
  r.method = Method::DM;
  r.nominal_level = level;
  r.lag = lag.value_or(newey_west_auto_lag(x.size()));
  r.statistic = dm_statistic(x, r.lag);
  const double z = normal_quantile(1.0 - level / 2.0);
  r.critical_lower = -z;
  r.critical_upper = z;
  r.reject = std::abs(r.statistic) > z;
  return r;
}

}  // namespace snpa
