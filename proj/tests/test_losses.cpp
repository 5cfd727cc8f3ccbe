#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "snpa/errors.hpp"
#include "snpa/losses.hpp"
#include "snpa/rng.hpp"

using namespace snpa;

namespace {

ForecastSeries constant_forecast(std::string name, std::size_t n, double v, double tau = 0.05) {
  ForecastSeries f;
  f.method = std::move(name);
  f.values.assign(n, v);
  f.tau = tau;
  return f;
}

TimeSeries simulate_garch(const Garch11Params& p, std::size_t n, std::uint64_t seed) {
  RngStream s(seed, 0);
  TimeSeries y;
  y.values.resize(n);
  double s2 = p.unconditional_variance();
  for (std::size_t t = 0; t < 1000 + n; ++t) {
    const double r = p.mu + std::sqrt(s2) * s.normal();
    if (t >= 1000) y.values[t - 1000] = r;
    s2 = garch_next_variance(p, s2, r);
  }
  return y;
}

}  // namespace

TEST_CASE("tick loss values") {
  CHECK(tick_loss(1.0, 0.0, 0.05) == doctest::Approx(0.05));
  CHECK(tick_loss(-1.0, 0.0, 0.05) == doctest::Approx(0.95));
  CHECK(tick_loss(0.3, 0.3, 0.7) == 0.0);
}

TEST_CASE("tick loss is non-negative with its minimum at y = q") {
  RngStream s(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double y = 4 * s.normal(), q = 4 * s.normal(), tau = s.uniform();
    const double l = tick_loss(y, q, tau);
    CHECK(l >= 0.0);
    CHECK((l == 0.0) == (y == q));
    CHECK(tick_loss(y, y, tau) == 0.0);
  }
}

TEST_CASE("loss differential") {
  TimeSeries y(std::vector<double>{1.0, 2.0, -0.5});
  const auto f = constant_forecast("a", 3, 0.1);
  const auto d0 = loss_differential(y, f, f, LossKind::Tick);
  for (double v : d0.values) CHECK(v == 0.0);

  TimeSeries one(std::vector<double>{1.0});
  CHECK(loss_differential(one, constant_forecast("a", 1, 0.0), constant_forecast("b", 1, 2.0),
                          LossKind::Squared)[0] == 0.0);
  TimeSeries two(std::vector<double>{2.0});
  CHECK(loss_differential(two, constant_forecast("a", 1, 1.0), constant_forecast("b", 1, 0.0),
                          LossKind::Squared)[0] == -3.0);

  CHECK_THROWS_AS(loss_differential(y, f, constant_forecast("b", 2, 0.0), LossKind::Tick),
                  ValidationError);
}

TEST_CASE("loss differential swaps sign exactly") {
  RngStream s(2, 0);
  TimeSeries y;
  auto f1 = constant_forecast("a", 500, 0.0), f2 = constant_forecast("b", 500, 0.0);
  for (std::size_t t = 0; t < 500; ++t) {
    y.values.push_back(s.normal());
    f1.values[t] = s.normal();
    f2.values[t] = s.normal();
  }
  for (auto kind : {LossKind::Tick, LossKind::Squared}) {
    const auto a = loss_differential(y, f1, f2, kind);
    const auto b = loss_differential(y, f2, f1, kind);
    for (std::size_t t = 0; t < 500; ++t) CHECK(a[t] == -b[t]);
  }
}

TEST_CASE("loss differential uses the common available range") {
  TimeSeries y(std::vector<double>{1, 2, 3, 4, 5}, {"2020-01-01", "2020-01-02", "2020-01-03",
                                                    "2020-01-06", "2020-01-07"});
  auto f1 = constant_forecast("a", 5, 0.0);
  auto f2 = constant_forecast("b", 5, 1.0);
  f2.first_available = 2;
  f2.values[0] = f2.values[1] = std::numeric_limits<double>::quiet_NaN();
  const auto d = loss_differential(y, f1, f2, LossKind::Squared);
  REQUIRE(d.size() == 3);
  CHECK(d.dates.front() == "2020-01-03");
  CHECK(d[0] == 9.0 - 4.0);
}

TEST_CASE("empirical quantile convention") {
  const std::vector<double> w{4, 2, 3, 1};
  CHECK(empirical_quantile_lower(w, 0.25) == 1.0);
  CHECK(empirical_quantile_lower(w, 0.5) == 2.0);
  CHECK(empirical_quantile_lower(w, 0.26) == 2.0);
  CHECK(empirical_quantile_lower(w, 1.0) == 4.0);
  CHECK(empirical_quantile_lower(std::vector<double>{0.1, 0.2, 0.3}, 0.1 + 0.2) == 0.1);
}

TEST_CASE("rolling-window quantile forecast") {
  TimeSeries r(std::vector<double>{1, 2, 3, 4, 9});
  const auto f25 = rw_quantile_forecast(r, 4, 0.25);
  CHECK(f25.first_available == 4);
  CHECK(std::isnan(f25.values[0]));
  CHECK(f25.values[4] == 1.0);
  CHECK(rw_quantile_forecast(r, 4, 0.5).values[4] == 2.0);
  CHECK(f25.method == "RW-4");

  TimeSeries c(std::vector<double>(10, 2.5));
  const auto fc = rw_quantile_forecast(c, 3, 0.37);
  for (std::size_t t = 3; t < 10; ++t) CHECK(fc.values[t] == 2.5);

  CHECK_THROWS_AS(rw_quantile_forecast(r, 5, 0.5), ValidationError);
  CHECK_THROWS_AS(rw_quantile_forecast(r, 0, 0.5), ValidationError);
}

TEST_CASE("rolling-window forecasts are violated at rate tau on iid data") {
  RngStream s(3, 0);
  const std::size_t h = 500, n = 10000 + h;
  TimeSeries r;
  for (std::size_t t = 0; t < n; ++t) r.values.push_back(s.normal());
  const double tau = 0.05;
  const auto f = rw_quantile_forecast(r, h, tau);
  double hits = 0;
  for (std::size_t t = h; t < n; ++t) hits += r[t] < f.values[t];
  const double m = static_cast<double>(n - h);
  CHECK(std::abs(hits / m - tau) < 2 * std::sqrt(tau * (1 - tau) / m));
}

TEST_CASE("zero returns are dropped") {
  TimeSeries r(std::vector<double>{0.1, 0.0, -0.2}, {"2021-03-01", "2021-03-02", "2021-03-03"});
  CHECK(drop_zero_returns(r) == 1);
  CHECK(r.values == std::vector<double>{0.1, -0.2});
  CHECK(r.dates == std::vector<std::string>{"2021-03-01", "2021-03-03"});
}

TEST_CASE("normal quantile") {
  CHECK(std::abs(normal_quantile(0.975) - 1.959963984540054) < 1e-12);
  CHECK(std::abs(normal_quantile(0.05) + 1.6448536269514722) < 1e-12);
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK_THROWS_AS(normal_quantile(0.0), ValidationError);
}

TEST_CASE("GARCH recursion arithmetic") {
  const Garch11Params p{0.2, 0.1, 0.1, 0.8};
  CHECK(garch_next_variance(p, 1.0, 0.2) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK_THROWS_AS((Garch11Params{0, 0.1, 0.5, 0.5}).validate(), ValidationError);
  CHECK_THROWS_AS((Garch11Params{0, 0.0, 0.1, 0.5}).validate(), ValidationError);
  CHECK_THROWS_AS((Garch11Params{0, 0.1, -0.1, 0.5}).validate(), ValidationError);
}

TEST_CASE("GARCH filter stays positive") {
  const Garch11Params p{0.0, 1e-6, 0.2, 0.79};
  RngStream s(4, 0);
  std::vector<double> y(5000);
  for (auto& v : y) v = 10 * s.normal();
  const auto s2 = garch_filter(p, y, 1e-8);
  CHECK(s2.size() == y.size() + 1);
  for (double v : s2) CHECK(v > 0.0);
}

TEST_CASE("GARCH VaR forecasts") {
  const Garch11Params p{0.1, 0.05, 0.1, 0.85};
  const TimeSeries y = simulate_garch(p, 300, 5);
  const auto med = garch_var_forecast(p, y, 0.5);
  for (double v : med.values) CHECK(v == 0.1);
  const auto q = garch_var_forecast(p, y, 0.05, 1.0);
  const auto s2 = garch_filter(p, y.view(), 1.0);
  for (std::size_t t = 0; t < y.size(); ++t) {
    CHECK(q.values[t] == doctest::Approx(0.1 - 1.6448536269514722 * std::sqrt(s2[t])).epsilon(1e-12));
  }
  CHECK(q.method == "G-N");
}

TEST_CASE("GARCH QMLE recovers the parameters") {
  const Garch11Params truth{0.0, 0.05, 0.10, 0.85};
  const auto y = simulate_garch(truth, 10000, 6);
  const auto fit = fit_garch11(y);
  CHECK(std::abs(fit.mu - truth.mu) < 0.05);
  CHECK(std::abs(fit.omega - truth.omega) < 0.05);
  CHECK(std::abs(fit.alpha - truth.alpha) < 0.05);
  CHECK(std::abs(fit.beta - truth.beta) < 0.05);
  CHECK(fit.alpha + fit.beta < 1.0);
  CHECK(fit.omega > 0.0);
}

TEST_CASE("GARCH fit postconditions on heavy-tailed data") {
  RngStream s(7, 0);
  TimeSeries y;
  for (int i = 0; i < 2000; ++i) y.values.push_back(s.normal() / std::sqrt(s.gamma(1.5) / 1.5));
  const auto fit = fit_garch11(y);
  CHECK(fit.alpha + fit.beta < 1.0);
  CHECK(fit.omega > 0.0);
  CHECK(fit.alpha >= 0.0);
  CHECK(fit.beta >= 0.0);
}

TEST_CASE("GARCH fit errors") {
  TimeSeries flat(std::vector<double>(500, 0.3));
  CHECK_THROWS_AS(fit_garch11(flat), EstimationError);
  TimeSeries short_series(std::vector<double>(100, 0.1));
  CHECK_THROWS_AS(fit_garch11(short_series), ValidationError);
}
