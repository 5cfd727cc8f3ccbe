#pragma once

#include <cmath>

namespace snpa::detail {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Moments {
  double sum = 0.0;
  double sum_squares = 0.0;
  double sum_abs = 0.0;
};

template <class Range>
Moments compensated_moments(const Range& x) {
  CompensatedSum s;
  CompensatedSum q;
  CompensatedSum a;
  for (double v : x) {
    s.add(v);
    q.add(v * v);
    a.add(std::abs(v));
  }
  return {s.value(), q.value(), a.value()};
}

}  // namespace snpa::detail
