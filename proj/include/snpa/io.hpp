#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "snpa/losses.hpp"
#include "snpa/time_series.hpp"

namespace snpa {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// Strict full-field parse; no NaN or infinity.
bool parse_double(std::string_view s, double& out);

// YYYY-MM-DD naming a real calendar day.
bool is_iso_date(std::string_view s);

// Files are comma separated with a header line. The first column is a row
// label: an ISO date or a non-negative integer index, strictly increasing and
// of one kind throughout. Labels land in TimeSeries::dates.

struct LoadedReturns {
  TimeSeries series;
  std::size_t dropped_zero = 0;
};

// (label, value) file; all values must be finite numbers.
TimeSeries load_series(const std::string& path);
TimeSeries read_series(std::istream& in, const std::string& source);

// load_series followed by drop_zero_returns.
LoadedReturns load_returns(const std::string& path);
LoadedReturns read_returns(std::istream& in, const std::string& source);

// (label, method_1, ..., method_k); NA or an empty field marks a missing value.
struct ForecastTable {
  std::vector<std::string> labels;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> columns;  // NaN where missing
};

ForecastTable read_forecast_table(std::istream& in, const std::string& source);
ForecastTable load_forecast_table(const std::string& path);

// Aligns each column with `returns` by label. Returns rows before the table's
// first label are unavailable; every later return label must be in the table
// (extra table rows are ignored). Missing values after a column's first value
// are errors, as are returns without labels.
std::vector<ForecastSeries> align_forecasts(const ForecastTable& table, const TimeSeries& returns,
                                            double tau);

std::vector<ForecastSeries> load_forecasts(const std::string& path, const TimeSeries& returns,
                                           double tau);

// Labels default to 1..n when the series has none.
void write_series(std::ostream& os, const TimeSeries& series, const std::string& value_header = "return");
void write_forecast_table(std::ostream& os, const ForecastTable& table);

}  // namespace snpa
