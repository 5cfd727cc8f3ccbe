#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snpa/losses.hpp"
#include "snpa/time_series.hpp"

namespace snpa {

struct PairwiseOptions {
  LossKind loss = LossKind::Tick;
  double tau = 0.05;
  // nullopt: newey_west_auto_lag of the evaluation length.
  std::optional<std::size_t> dm_lag = 20;
  double level = 0.05;
  std::optional<std::size_t> block;
  // First index eligible for evaluation (e.g. the out-of-sample start).
  std::size_t eval_start = 0;
};

// Row method minus column method. For degenerate pairs (all-zero differential
// or a non-positive long-run variance) the statistics are NaN and nothing is
// rejected.
struct PairwiseCell {
  double dm_stat = 0.0;
  bool dm_reject = false;
  double alg1_stat = 0.0;
  double alg1_lower = 0.0;
  double alg1_upper = 0.0;
  bool alg1_reject = false;
  bool degenerate = false;
};

struct PairwiseReport {
  std::vector<std::string> methods;
  std::size_t n = 0;            // length of the evaluation sample
  std::size_t start_index = 0;  // first evaluated index of the target series
  std::string start_label;
  double tau = 0.05;
  double level = 0.05;
  std::size_t block = 0;
  std::size_t dm_lag = 0;
  double dm_critical = 0.0;  // Phi^{-1}(1 - level/2)
  std::vector<PairwiseCell> cells;  // row-major, methods.size()^2

  std::size_t size() const { return methods.size(); }
  const PairwiseCell& cell(std::size_t i, std::size_t j) const { return cells[i * size() + j]; }
};

// Every pair is evaluated on the same sample: from the later of eval_start and
// the last first_available index to the end. Only i < j is computed; (j, i) is
// the exact mirror (negated statistic, negated and swapped interval).
PairwiseReport pairwise_epa_matrix(const TimeSeries& y, const std::vector<ForecastSeries>& forecasts,
                                   const PairwiseOptions& opts = {});

// Long format, one line per ordered pair.
void write_pairwise_csv(std::ostream& os, const PairwiseReport& report);

}  // namespace snpa
