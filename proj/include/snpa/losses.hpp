#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "snpa/time_series.hpp"

namespace snpa {

// Quantile forecasts aligned with a target series: values[t] is the forecast
// made at t-1 for observation t. Entries before `first_available` carry NaN.
struct ForecastSeries {
  std::string method;
  std::vector<double> values;
  double tau = 0.05;
  std::size_t first_available = 0;

  std::size_t size() const { return values.size(); }
  void validate() const;
};

enum class LossKind { Tick, Squared };

// (tau - 1{y < q}) (y - q).
double tick_loss(double y, double q, double tau);
double squared_loss(double y, double f);
double loss(LossKind kind, double y, double forecast, double tau);

// X_t = L(y_t, f1_t) - L(y_t, f2_t) over the indices where both forecasts are
// available. Dates are carried over when `y` has them.
TimeSeries loss_differential(const TimeSeries& y, const ForecastSeries& f1,
                             const ForecastSeries& f2, LossKind kind);

// Smallest x with empirical CDF >= tau, i.e. the ceil(tau * n)-th order
// statistic. No interpolation.
double empirical_quantile_lower(std::span<const double> values, double tau);

// Forecast for t is the empirical tau-quantile of returns t-H .. t-1; the first
// H positions are unavailable.
ForecastSeries rw_quantile_forecast(const TimeSeries& returns, std::size_t window, double tau);

// Drops exactly-zero returns; returns the number dropped.
std::size_t drop_zero_returns(TimeSeries& returns);

// Standard normal quantile.
double normal_quantile(double p);

struct Garch11Params {
  double mu = 0.0;
  double omega = 0.05;
  double alpha = 0.05;
  double beta = 0.90;

  void validate() const;
  double unconditional_variance() const { return omega / (1.0 - alpha - beta); }
};

struct GarchFitOptions {
  std::size_t max_evaluations = 20000;
  double tolerance = 1e-10;
  std::size_t min_length = 250;
};

// One-step variance recursion sigma2_{t+1} = omega + alpha (y_t - mu)^2 + beta sigma2_t.
double garch_next_variance(const Garch11Params& p, double sigma2, double y);

// Conditional variances sigma2_1..sigma2_{n+1}; the last entry is the one-step
// forecast beyond the sample.
std::vector<double> garch_filter(const Garch11Params& p, std::span<const double> returns,
                                 double initial_variance);

// Average Gaussian log-likelihood with sigma2_1 = initial_variance.
double garch_log_likelihood(const Garch11Params& p, std::span<const double> returns,
                            double initial_variance);

// Gaussian quasi-MLE with Nelder-Mead over an unconstrained reparameterization
// (omega = e^a, alpha + beta = logistic(b), alpha = (alpha + beta) logistic(c)).
// sigma2_1 is the sample variance.
Garch11Params fit_garch11(const TimeSeries& returns, const GarchFitOptions& opts = {});

// Q_t = mu + Phi^{-1}(tau) sigma_t with fixed parameters and sigma2_1 set to
// `initial_variance` (the sample variance of `returns` when NaN).
ForecastSeries garch_var_forecast(const Garch11Params& params, const TimeSeries& returns,
                                  double tau,
                                  double initial_variance = std::numeric_limits<double>::quiet_NaN());

}  // namespace snpa
