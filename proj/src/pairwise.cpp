#include "snpa/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "snpa/errors.hpp"
#include "snpa/io.hpp"
#include "snpa/stats.hpp"
#include "snpa/subsampling.hpp"

namespace snpa {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

PairwiseCell degenerate_cell() {
  PairwiseCell c;
  c.dm_stat = c.alg1_stat = c.alg1_lower = c.alg1_upper = kNaN;
  c.degenerate = true;
  return c;
}

PairwiseCell evaluate_pair(std::span<const double> d, std::size_t lag, const PairwiseOptions& opts) {
  if (std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; })) return degenerate_cell();
  PairwiseCell c;
  try {
    const auto dm = dm_test(d, lag, opts.level);
    c.dm_stat = dm.statistic;
    c.dm_reject = dm.reject;
    SubsampleConfig sc;
    sc.block = opts.block;
    sc.level = opts.level;
    const auto alg = epa_test(d, sc);
    c.alg1_stat = alg.statistic;
    c.alg1_lower = alg.critical_lower;
    c.alg1_upper = alg.critical_upper;
    c.alg1_reject = alg.reject;
  } catch (const DegenerateError&) {
    return degenerate_cell();
  }
  return c;
}

PairwiseCell mirror(const PairwiseCell& c) {
  if (c.degenerate) return c;
  PairwiseCell m = c;
  m.dm_stat = -c.dm_stat;
  m.alg1_stat = -c.alg1_stat;
  m.alg1_lower = -c.alg1_upper;
  m.alg1_upper = -c.alg1_lower;
  return m;
}

}  // namespace

PairwiseReport pairwise_epa_matrix(const TimeSeries& y, const std::vector<ForecastSeries>& forecasts,
                                   const PairwiseOptions& opts) {
  y.validate();
  const std::size_t k = forecasts.size();
  if (k < 2) throw ValidationError("pairwise_epa_matrix: need at least two forecast methods");
  if (!(opts.tau > 0.0 && opts.tau < 1.0)) throw ValidationError("pairwise_epa_matrix: tau must lie in (0,1)");
  std::size_t start = opts.eval_start;
  for (const auto& f : forecasts) {
    f.validate();
    if (f.size() != y.size()) {
      throw ValidationError("pairwise_epa_matrix: forecast '" + f.method + "' has " +
                            std::to_string(f.size()) + " values for " + std::to_string(y.size()) +
                            " observations");
    }
    start = std::max(start, f.first_available);
  }
  if (start >= y.size()) throw ValidationError("pairwise_epa_matrix: empty evaluation sample");
  const std::size_t n = y.size() - start;

  std::vector<std::vector<double>> losses(k, std::vector<double>(n));
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t t = 0; t < n; ++t) {
      const double f = forecasts[m].values[start + t];
      if (!std::isfinite(f)) {
        throw ValidationError("pairwise_epa_matrix: forecast '" + forecasts[m].method +
                              "' missing at index " + std::to_string(start + t));
      }
      losses[m][t] = loss(opts.loss, y.values[start + t], f, opts.tau);
    }
  }

  PairwiseReport rep;
  for (const auto& f : forecasts) rep.methods.push_back(f.method);
  rep.n = n;
  rep.start_index = start;
  if (y.has_dates()) rep.start_label = y.dates[start];
  rep.tau = opts.tau;
  rep.level = opts.level;
  SubsampleConfig sc;
  sc.block = opts.block;
  sc.level = opts.level;
  sc.validate(n);
  rep.block = sc.block_for(n);
  rep.dm_lag = opts.dm_lag.value_or(newey_west_auto_lag(n));
  if (rep.dm_lag >= n) throw ValidationError("pairwise_epa_matrix: DM lag must be below n");
  rep.dm_critical = normal_quantile(1.0 - opts.level / 2.0);
  rep.cells.assign(k * k, degenerate_cell());

  std::vector<double> d(n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t t = 0; t < n; ++t) d[t] = losses[i][t] - losses[j][t];
      const auto c = evaluate_pair(d, rep.dm_lag, opts);
      rep.cells[i * k + j] = c;
      rep.cells[j * k + i] = mirror(c);
    }
  }
  return rep;
}

void write_pairwise_csv(std::ostream& os, const PairwiseReport& report) {
  os << "row,col,n,dm_stat,dm_critical,dm_reject,alg1_stat,alg1_lower,alg1_upper,alg1_reject,"
        "degenerate\n";
  auto num = [](double v) { return std::isnan(v) ? std::string("NA") : format_double(v); };
  for (std::size_t i = 0; i < report.size(); ++i) {
    for (std::size_t j = 0; j < report.size(); ++j) {
      if (i == j) continue;
      const auto& c = report.cell(i, j);
      os << report.methods[i] << ',' << report.methods[j] << ',' << report.n << ','
         << num(c.dm_stat) << ',' << format_double(report.dm_critical) << ',' << c.dm_reject
         << ',' << num(c.alg1_stat) << ',' << num(c.alg1_lower) << ',' << num(c.alg1_upper)
         << ',' << c.alg1_reject << ',' << c.degenerate << '\n';
    }
  }
}

}  // namespace snpa
