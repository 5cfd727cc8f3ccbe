#include "snpa/losses.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nelder_mead.hpp"
#include "snpa/errors.hpp"

namespace snpa {

void ForecastSeries::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) throw ValidationError("ForecastSeries: tau must lie in (0,1)");
  if (first_available > values.size()) {
    throw ValidationError("ForecastSeries: first_available beyond series end");
  }
  for (std::size_t i = first_available; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ValidationError("ForecastSeries '" + method + "': non-finite forecast at index " +
                            std::to_string(i));
    }
  }
}

double tick_loss(double y, double q, double tau) {
  const double e = y - q;
  return (tau - (e < 0.0 ? 1.0 : 0.0)) * e;
}

double squared_loss(double y, double f) {
  const double e = y - f;
  return e * e;
}

double loss(LossKind kind, double y, double forecast, double tau) {
  return kind == LossKind::Tick ? tick_loss(y, forecast, tau) : squared_loss(y, forecast);
}

TimeSeries loss_differential(const TimeSeries& y, const ForecastSeries& f1,
                             const ForecastSeries& f2, LossKind kind) {
  if (f1.size() != y.size() || f2.size() != y.size()) {
    throw ValidationError("loss_differential: forecast length does not match target length");
  }
  if (kind == LossKind::Tick && f1.tau != f2.tau) {
    throw ValidationError("loss_differential: forecasts target different risk levels");
  }
  const std::size_t start = std::max(f1.first_available, f2.first_available);
  TimeSeries out;
  out.values.reserve(y.size() - std::min(start, y.size()));
  for (std::size_t t = start; t < y.size(); ++t) {
    out.values.push_back(loss(kind, y[t], f1.values[t], f1.tau) -
                         loss(kind, y[t], f2.values[t], f2.tau));
    if (y.has_dates()) out.dates.push_back(y.dates[t]);
  }
  return out;
}

double empirical_quantile_lower(std::span<const double> values, double tau) {
  if (values.empty()) throw ValidationError("empirical quantile of an empty sample");
  if (!(tau > 0.0 && tau <= 1.0)) throw ValidationError("empirical quantile level must lie in (0,1]");
  const std::size_t n = values.size();
  const double nd = static_cast<double>(n);
  // Smallest k with k/n >= tau, evaluated with the same floating comparison.
  auto k = static_cast<std::size_t>(std::ceil(tau * nd));
  k = std::clamp<std::size_t>(k, 1, n);
  while (k > 1 && static_cast<double>(k - 1) / nd >= tau) --k;
  while (k < n && static_cast<double>(k) / nd < tau) ++k;
  std::vector<double> tmp(values.begin(), values.end());
  std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(k - 1), tmp.end());
  return tmp[k - 1];
}

ForecastSeries rw_quantile_forecast(const TimeSeries& returns, std::size_t window, double tau) {
  if (window == 0) throw ValidationError("rw_quantile_forecast: window must be positive");
  if (window >= returns.size()) {
    throw ValidationError("rw_quantile_forecast: window " + std::to_string(window) +
                          " is not shorter than the series (" + std::to_string(returns.size()) +
                          ")");
  }
  if (!(tau > 0.0 && tau < 1.0)) throw ValidationError("rw_quantile_forecast: tau must lie in (0,1)");
  ForecastSeries f;
  f.method = "RW-" + std::to_string(window);
  f.tau = tau;
  f.first_available = window;
  f.values.assign(returns.size(), std::numeric_limits<double>::quiet_NaN());
  const auto& v = returns.values;
  for (std::size_t t = window; t < v.size(); ++t) {
    f.values[t] = empirical_quantile_lower(
        std::span<const double>(v.data() + (t - window), window), tau);
  }
  return f;
}

std::size_t drop_zero_returns(TimeSeries& returns) {
  TimeSeries kept;
  kept.values.reserve(returns.size());
  for (std::size_t i = 0; i < returns.size(); ++i) {
    if (returns.values[i] == 0.0) continue;
    kept.values.push_back(returns.values[i]);
    if (returns.has_dates()) kept.dates.push_back(returns.dates[i]);
  }
  const std::size_t dropped = returns.size() - kept.size();
  returns = std::move(kept);
  return dropped;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("normal_quantile: p must lie in (0,1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

void Garch11Params::validate() const {
  if (!(omega > 0.0)) throw ValidationError("Garch11Params: omega must be positive");
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw ValidationError("Garch11Params: alpha and beta must be non-negative");
  }
  if (!(alpha + beta < 1.0)) throw ValidationError("Garch11Params: alpha + beta must be < 1");
  if (!std::isfinite(mu)) throw ValidationError("Garch11Params: mu must be finite");
}

double garch_next_variance(const Garch11Params& p, double sigma2, double y) {
  const double e = y - p.mu;
  return p.omega + p.alpha * e * e + p.beta * sigma2;
}

std::vector<double> garch_filter(const Garch11Params& p, std::span<const double> returns,
                                 double initial_variance) {
  std::vector<double> s2(returns.size() + 1);
  s2[0] = initial_variance;
  for (std::size_t t = 0; t < returns.size(); ++t) s2[t + 1] = garch_next_variance(p, s2[t], returns[t]);
  return s2;
}

double garch_log_likelihood(const Garch11Params& p, std::span<const double> returns,
                            double initial_variance) {
  constexpr double kLog2Pi = 1.8378770664093454836;
  double s2 = initial_variance;
  double ll = 0.0;
  for (double y : returns) {
    const double e = y - p.mu;
    ll -= 0.5 * (kLog2Pi + std::log(s2) + e * e / s2);
    s2 = p.omega + p.alpha * e * e + p.beta * s2;
  }
  return ll / static_cast<double>(returns.size());
}

namespace {

double sample_mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  const double m = sample_mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

// Persistence is capped just below one so the stationarity constraint is
// strict on output.
constexpr double kMaxPersistence = 1.0 - 1e-8;

Garch11Params unpack(const std::vector<double>& z) {
  Garch11Params p;
  p.mu = z[0];
  p.omega = std::exp(z[1]);
  const double persistence = kMaxPersistence * logistic(z[2]);
  p.alpha = persistence * logistic(z[3]);
  p.beta = persistence - p.alpha;
  return p;
}

}  // namespace

Garch11Params fit_garch11(const TimeSeries& returns, const GarchFitOptions& opts) {
  if (returns.size() < opts.min_length) {
    throw ValidationError("fit_garch11: need at least " + std::to_string(opts.min_length) +
                          " observations, got " + std::to_string(returns.size()));
  }
  require_finite(returns.values, "fit_garch11");
  const auto y = returns.view();
  const double var = sample_variance(y);
  const double mean = sample_mean(y);
  // Relative check: a constant series leaves round-off variance behind.
  if (!(var > 1e-20 * mean * mean) || var <= 1e-300) {
    throw EstimationError("fit_garch11: degenerate (zero) sample variance");
  }

  // Variance-targeted start: alpha = 0.05, beta = 0.90.
  const double a0 = 0.05;
  const double b0 = 0.90;
  std::vector<double> start{mean, std::log(var * (1.0 - a0 - b0)), logit((a0 + b0) / kMaxPersistence),
                            logit(a0 / (a0 + b0))};
  // Work with mu scaled by the return standard deviation so one simplex step
  // size suits every coordinate.
  const double sd = std::sqrt(var);
  start[0] = mean / sd;

  std::vector<std::string> trace;
  auto objective = [&](const std::vector<double>& z) {
    auto zz = z;
    zz[0] *= sd;
    const double nll = -garch_log_likelihood(unpack(zz), y, var);
    if (trace.size() >= 8) trace.erase(trace.begin());
    std::ostringstream os;
    os << "nll=" << nll << " at (" << zz[0] << "," << zz[1] << "," << zz[2] << "," << zz[3] << ")";
    trace.push_back(os.str());
    return nll;
  };

  auto best = detail::nelder_mead(objective, start, 0.5, opts.max_evaluations, opts.tolerance);
  // One restart from the optimum guards against premature simplex collapse.
  if (best.converged) {
    auto again = detail::nelder_mead(objective, best.x, 0.1, opts.max_evaluations, opts.tolerance);
    if (again.value <= best.value) best = again;
  }
  if (!best.converged || !std::isfinite(best.value)) {
    throw EstimationError("fit_garch11: no convergence within " +
                              std::to_string(opts.max_evaluations) + " evaluations",
                          trace);
  }
  best.x[0] *= sd;
  auto params = unpack(best.x);
  params.validate();
  return params;
}

ForecastSeries garch_var_forecast(const Garch11Params& params, const TimeSeries& returns,
                                  double tau, double initial_variance) {
  params.validate();
  if (!(tau > 0.0 && tau < 1.0)) throw ValidationError("garch_var_forecast: tau must lie in (0,1)");
  if (returns.empty()) throw ValidationError("garch_var_forecast: empty return series");
  if (std::isnan(initial_variance)) initial_variance = sample_variance(returns.view());
  const double z = normal_quantile(tau);
  const auto s2 = garch_filter(params, returns.view(), initial_variance);
  ForecastSeries f;
  f.method = "G-N";
  f.tau = tau;
  f.values.resize(returns.size());
  for (std::size_t t = 0; t < returns.size(); ++t) {
    // Exact mu at tau = 1/2.
    f.values[t] = z == 0.0 ? params.mu : params.mu + z * std::sqrt(s2[t]);
  }
  return f;
}

}  // namespace snpa
