#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace snpa {

// Ordered real-valued observations with optional ISO-8601 dates.
// `dates` is either empty or the same length as `values`.
struct TimeSeries {
  std::vector<double> values;
  std::vector<std::string> dates;

  TimeSeries() = default;
  explicit TimeSeries(std::vector<double> v, std::vector<std::string> d = {})
      : values(std::move(v)), dates(std::move(d)) {}

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  bool has_dates() const { return !dates.empty(); }
  std::span<const double> view() const { return values; }
  double operator[](std::size_t i) const { return values[i]; }

  // Throws ValidationError on NaN/inf or a dates/values length mismatch.
  void validate() const;
};

// Throws ValidationError naming `what` if any value is non-finite.
void require_finite(std::span<const double> x, const char* what);

}  // namespace snpa
