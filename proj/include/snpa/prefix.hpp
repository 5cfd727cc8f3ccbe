#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace snpa {

// Window sums of x, x^2 and |x| in O(1) per window.
//
// The series is cut into segments of length L. Within each segment the table
// keeps compensated forward (from the segment start) and backward (to the
// segment end) cumulative sums. A window of length >= L is then the backward
// sum at its start plus the forward sum at its end (plus whole segments in
// between), so a window sum only ever adds up observations inside the window.
// Global prefix differences would instead cancel against everything before
// the window, which destroys small windows that follow a heavy-tailed spike.
//
// Subsampling uses L = b, making every length-b window exactly two lookups.
class PrefixTable {
 public:
  struct Sums {
    double sum = 0.0;
    double sum_squares = 0.0;
    double sum_abs = 0.0;
  };

  PrefixTable() = default;
  // segment_length = 0 picks ceil(sqrt(n)).
  explicit PrefixTable(std::span<const double> x, std::size_t segment_length = 0);

  std::size_t size() const { return n_; }
  std::size_t segment_length() const { return seg_; }

  // Sums over x[start], ..., x[start + len - 1] (0-based start). Throws
  // ValidationError for an empty or out-of-range window.
  Sums window(std::size_t start, std::size_t len) const;
  double sum(std::size_t start, std::size_t len) const;
  double sum_squares(std::size_t start, std::size_t len) const;
  double sum_abs(std::size_t start, std::size_t len) const;

 private:
  void check(std::size_t start, std::size_t len) const;

  std::size_t n_ = 0;
  std::size_t seg_ = 1;
  Sums full_;
  std::vector<Sums> fwd_;
  std::vector<Sums> bwd_;
  std::vector<double> data_;
};

PrefixTable build_prefix(std::span<const double> x, std::size_t segment_length = 0);

struct WindowStat {
  double value = 0.0;
  bool degenerate = false;  // all-zero window; value is 0
};

// Self-normalized statistic of the window x[start .. start+len-1].
WindowStat window_self_norm(const PrefixTable& table, std::size_t start, std::size_t len);
// Modified statistic (sum|x|/len) * T of the same window.
WindowStat window_modified(const PrefixTable& table, std::size_t start, std::size_t len);

}  // namespace snpa
