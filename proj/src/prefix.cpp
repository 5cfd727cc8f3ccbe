#include "snpa/prefix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snpa/errors.hpp"
#include "summation.hpp"

namespace snpa {

PrefixTable::PrefixTable(std::span<const double> x, std::size_t segment_length)
    : n_(x.size()) {
  if (segment_length == 0) {
    segment_length = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(
                                                  static_cast<double>(std::max<std::size_t>(n_, 1))))));
  }
  seg_ = segment_length;
  const auto full = detail::compensated_moments(x);
  full_ = {full.sum, full.sum_squares, full.sum_abs};

  fwd_.resize(n_);
  bwd_.resize(n_);
  for (std::size_t s = 0; s < n_; s += seg_) {
    const std::size_t e = std::min(n_, s + seg_);
    detail::CompensatedSum a, b, c;
    for (std::size_t t = s; t < e; ++t) {
      a.add(x[t]);
      b.add(x[t] * x[t]);
      c.add(std::abs(x[t]));
      fwd_[t] = {a.value(), b.value(), c.value()};
    }
    detail::CompensatedSum ra, rb, rc;
    for (std::size_t t = e; t-- > s;) {
      ra.add(x[t]);
      rb.add(x[t] * x[t]);
      rc.add(std::abs(x[t]));
      bwd_[t] = {ra.value(), rb.value(), rc.value()};
    }
  }
  data_.assign(x.begin(), x.end());
}

void PrefixTable::check(std::size_t start, std::size_t len) const {
  if (len == 0 || start >= n_ || len > n_ - start) {
    throw ValidationError("PrefixTable: window [" + std::to_string(start) + ", " +
                          std::to_string(start + len) + ") outside [0, " + std::to_string(n_) +
                          ")");
  }
}

PrefixTable::Sums PrefixTable::window(std::size_t start, std::size_t len) const {
  check(start, len);
  if (start == 0 && len == n_) return full_;
  const std::size_t end = start + len;  // exclusive
  const std::size_t first_seg = start / seg_;
  const std::size_t last_seg = (end - 1) / seg_;

  if (first_seg == last_seg) {
    const std::size_t seg_start = first_seg * seg_;
    const std::size_t seg_end = std::min(n_, seg_start + seg_);
    if (start == seg_start) return fwd_[end - 1];
    if (end == seg_end) return bwd_[start];
    // Interior of a single segment: sum the window directly.
    detail::CompensatedSum a, b, c;
    for (std::size_t t = start; t < end; ++t) {
      a.add(data_[t]);
      b.add(data_[t] * data_[t]);
      c.add(std::abs(data_[t]));
    }
    return {a.value(), b.value(), c.value()};
  }

  // Tail of the first segment, whole middle segments, head of the last one.
  detail::CompensatedSum a, b, c;
  auto add = [&](const Sums& s) {
    a.add(s.sum);
    b.add(s.sum_squares);
    c.add(s.sum_abs);
  };
  add(bwd_[start]);
  for (std::size_t k = first_seg + 1; k < last_seg; ++k) {
    add(fwd_[std::min(n_, (k + 1) * seg_) - 1]);
  }
  add(fwd_[end - 1]);
  return {a.value(), b.value(), c.value()};
}

double PrefixTable::sum(std::size_t start, std::size_t len) const {
  return window(start, len).sum;
}
double PrefixTable::sum_squares(std::size_t start, std::size_t len) const {
  return window(start, len).sum_squares;
}
double PrefixTable::sum_abs(std::size_t start, std::size_t len) const {
  return window(start, len).sum_abs;
}

PrefixTable build_prefix(std::span<const double> x, std::size_t segment_length) {
  return PrefixTable(x, segment_length);
}

WindowStat window_self_norm(const PrefixTable& table, std::size_t start, std::size_t len) {
  const auto w = table.window(start, len);
  if (w.sum_squares == 0.0) return {0.0, true};
  return {w.sum / std::sqrt(w.sum_squares), false};
}

WindowStat window_modified(const PrefixTable& table, std::size_t start, std::size_t len) {
  const auto w = table.window(start, len);
  if (w.sum_squares == 0.0) return {0.0, true};
  return {(w.sum_abs / static_cast<double>(len)) * (w.sum / std::sqrt(w.sum_squares)), false};
}

}  // namespace snpa
