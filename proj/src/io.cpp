#include "snpa/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "snpa/errors.hpp"

namespace snpa {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
  throw ValidationError(source + ":" + std::to_string(line) + ": " + msg);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return in;
}

enum class LabelKind { Unknown, Date, Index };

// Validates row labels: one kind throughout, strictly increasing.
class LabelChecker {
 public:
  explicit LabelChecker(const std::string& source) : source_(source) {}

  void check(std::string_view label, std::size_t line) {
    LabelKind kind;
    std::uint64_t index = 0;
    if (is_iso_date(label)) {
      kind = LabelKind::Date;
    } else {
      const auto* end = label.data() + label.size();
      auto [ptr, ec] = std::from_chars(label.data(), end, index);
      if (label.empty() || ec != std::errc() || ptr != end) {
        fail(source_, line, "invalid row label '" + std::string(label) +
                                "' (expected YYYY-MM-DD or an integer index)");
      }
      kind = LabelKind::Index;
    }
    if (kind_ == LabelKind::Unknown) {
      kind_ = kind;
    } else if (kind != kind_) {
      fail(source_, line, "row label '" + std::string(label) + "' mixes dates and indices");
    } else {
      const bool increasing = kind == LabelKind::Date ? std::string(label) > last_label_
                                                      : index > last_index_;
      if (!increasing) {
        fail(source_, line, "row label '" + std::string(label) + "' is not after '" +
                                last_label_ + "'");
      }
    }
    last_label_ = std::string(label);
    last_index_ = index;
  }

 private:
  std::string source_;
  LabelKind kind_ = LabelKind::Unknown;
  std::string last_label_;
  std::uint64_t last_index_ = 0;
};

// Order of two labels of the same kind; mixed kinds compare as unordered.
bool label_less(const std::string& a, const std::string& b) {
  const bool da = is_iso_date(a), db = is_iso_date(b);
  if (da || db) return da && db && a < b;
  std::uint64_t ia = 0, ib = 0;
  std::from_chars(a.data(), a.data() + a.size(), ia);
  std::from_chars(b.data(), b.data() + b.size(), ib);
  return ia < ib;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool is_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  int y = 0;
  unsigned m = 0, d = 0;
  auto num = [&](std::size_t pos, std::size_t len, auto& out) {
    const auto* b = s.data() + pos;
    auto [ptr, ec] = std::from_chars(b, b + len, out);
    return ec == std::errc() && ptr == b + len;
  };
  if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return false;
  return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                     std::chrono::day{d}}
      .ok();
}

TimeSeries read_series(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail(source, 1, "empty file (a header line is required)");
  ++line_no;
  if (split_fields(line).size() != 2) fail(source, line_no, "header must have two columns");
  TimeSeries ts;
  LabelChecker labels(source);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      fail(source, line_no, "expected 2 fields, found " + std::to_string(fields.size()));
    }
    labels.check(fields[0], line_no);
    double v;
    if (!parse_double(fields[1], v)) {
      fail(source, line_no, "invalid number '" + std::string(fields[1]) + "'");
    }
    ts.dates.emplace_back(fields[0]);
    ts.values.push_back(v);
  }
  if (ts.empty()) fail(source, line_no, "no data rows");
  return ts;
}

TimeSeries load_series(const std::string& path) {
  auto in = open_or_throw(path);
  return read_series(in, path);
}

LoadedReturns read_returns(std::istream& in, const std::string& source) {
  LoadedReturns out{read_series(in, source), 0};
  out.dropped_zero = drop_zero_returns(out.series);
  if (out.series.empty()) throw ValidationError(source + ": every return is zero");
  return out;
}

LoadedReturns load_returns(const std::string& path) {
  auto in = open_or_throw(path);
  return read_returns(in, path);
}

ForecastTable read_forecast_table(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail(source, 1, "empty file (a header line is required)");
  ++line_no;
  const auto header = split_fields(line);
  if (header.size() < 2) fail(source, line_no, "header needs a label column and a method column");
  ForecastTable table;
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (header[j].empty()) fail(source, line_no, "empty method name in column " + std::to_string(j + 1));
    for (const auto& m : table.methods) {
      if (m == header[j]) fail(source, line_no, "duplicate method '" + m + "'");
    }
    table.methods.emplace_back(header[j]);
  }
  table.columns.resize(table.methods.size());
  LabelChecker labels(source);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      fail(source, line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                std::to_string(fields.size()));
    }
    labels.check(fields[0], line_no);
    table.labels.emplace_back(fields[0]);
    for (std::size_t j = 1; j < fields.size(); ++j) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!fields[j].empty() && fields[j] != "NA" && !parse_double(fields[j], v)) {
        fail(source, line_no, "invalid number '" + std::string(fields[j]) + "' for method '" +
                                  table.methods[j - 1] + "'");
      }
      table.columns[j - 1].push_back(v);
    }
  }
  if (table.labels.empty()) fail(source, line_no, "no data rows");
  return table;
}

ForecastTable load_forecast_table(const std::string& path) {
  auto in = open_or_throw(path);
  return read_forecast_table(in, path);
}

std::vector<ForecastSeries> align_forecasts(const ForecastTable& table, const TimeSeries& returns,
                                            double tau) {
  if (!returns.has_dates()) throw ValidationError("align_forecasts: returns carry no row labels");
  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < table.labels.size(); ++r) row_of.emplace(table.labels[r], r);

  // First returns row covered by the table.
  std::size_t start = 0;
  while (start < returns.size() && row_of.find(returns.dates[start]) == row_of.end()) {
    ++start;
  }
  if (start == returns.size()) {
    throw ValidationError("align_forecasts: no forecast label matches a return label");
  }
  // Labels are increasing in both files, so a return label earlier than the
  // first table label precedes the table; anything later must be present.
  for (std::size_t t = 0; t < start; ++t) {
    if (!label_less(returns.dates[t], table.labels.front())) {
      throw ValidationError("align_forecasts: forecasts missing for " + returns.dates[t]);
    }
  }
  std::vector<std::size_t> rows(returns.size() - start);
  for (std::size_t t = start; t < returns.size(); ++t) {
    const auto it = row_of.find(returns.dates[t]);
    if (it == row_of.end()) {
      throw ValidationError("align_forecasts: forecasts missing for " + returns.dates[t]);
    }
    rows[t - start] = it->second;
  }

  std::vector<ForecastSeries> out;
  for (std::size_t j = 0; j < table.methods.size(); ++j) {
    ForecastSeries f;
    f.method = table.methods[j];
    f.tau = tau;
    f.values.assign(returns.size(), std::numeric_limits<double>::quiet_NaN());
    bool seen = false;
    f.first_available = returns.size();
    for (std::size_t t = start; t < returns.size(); ++t) {
      const double v = table.columns[j][rows[t - start]];
      if (std::isnan(v)) {
        if (seen) {
          throw ValidationError("align_forecasts: method '" + f.method + "' has no value for " +
                                returns.dates[t] + " after its first forecast");
        }
        continue;
      }
      if (!seen) {
        seen = true;
        f.first_available = t;
      }
      f.values[t] = v;
    }
    if (!seen) throw ValidationError("align_forecasts: method '" + f.method + "' has no values");
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<ForecastSeries> load_forecasts(const std::string& path, const TimeSeries& returns,
                                           double tau) {
  return align_forecasts(load_forecast_table(path), returns, tau);
}

void write_series(std::ostream& os, const TimeSeries& series, const std::string& value_header) {
  os << (series.has_dates() && is_iso_date(series.dates.front()) ? "date" : "t") << ','
     << value_header << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.has_dates()) {
      os << series.dates[i];
    } else {
      os << i + 1;
    }
    os << ',' << format_double(series.values[i]) << '\n';
  }
}

void write_forecast_table(std::ostream& os, const ForecastTable& table) {
  os << (!table.labels.empty() && is_iso_date(table.labels.front()) ? "date" : "t");
  for (const auto& m : table.methods) os << ',' << m;
  os << '\n';
  for (std::size_t r = 0; r < table.labels.size(); ++r) {
    os << table.labels[r];
    for (const auto& col : table.columns) {
      os << ',' << (std::isnan(col[r]) ? std::string("NA") : format_double(col[r]));
    }
    os << '\n';
  }
}

}  // namespace snpa
