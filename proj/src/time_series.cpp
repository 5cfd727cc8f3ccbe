#include "snpa/time_series.hpp"

#include <cmath>
#include <string>

#include "snpa/errors.hpp"

namespace snpa {

void require_finite(std::span<const double> x, const char* what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw ValidationError(std::string(what) + ": non-finite value at index " +
                            std::to_string(i));
    }
  }
}

void TimeSeries::validate() const {
  if (!dates.empty() && dates.size() != values.size()) {
    throw ValidationError("TimeSeries: " + std::to_string(dates.size()) + " dates for " +
                          std::to_string(values.size()) + " values");
  }
  require_finite(values, "TimeSeries");
}

}  // namespace snpa
