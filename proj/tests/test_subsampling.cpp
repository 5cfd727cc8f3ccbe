#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mc_util.hpp"
#include "snpa/dgp.hpp"
#include "snpa/distributions.hpp"
#include "snpa/errors.hpp"
#include "snpa/rng.hpp"
#include "snpa/subsampling.hpp"

using namespace snpa;
using snpa::testing::rel_err;

namespace {

std::vector<double> stable_series(RngStream& s, std::size_t n, double kappa, double shift = 0.0) {
  std::vector<double> x(n);
  for (auto& v : x) v = sample_stable(StableParams::symmetric(kappa), s) + shift;
  return x;
}

std::vector<double> normal_series(RngStream& s, std::size_t n, double mean = 0.0) {
  std::vector<double> x(n);
  for (auto& v : x) v = mean + s.normal();
  return x;
}

}  // namespace

TEST_CASE("default block rule") {
  CHECK(default_block(10000) == 150);
  CHECK(default_block(1000) == 47);
  CHECK(default_block(9) == 4);
  CHECK(default_block(5) == 3);
  CHECK(default_block(100) == 15);
  CHECK_THROWS_AS(default_block(4), ValidationError);
}

TEST_CASE("empirical quantile") {
  const std::vector<double> s{1, 2, 3, 4};
  CHECK(empirical_quantile(s, 0.25) == 1.0);
  CHECK(empirical_quantile(s, 0.75) == 3.0);
  CHECK(empirical_quantile(s, 1.0) == 4.0);
  CHECK(empirical_quantile(s, 0.01) == 1.0);
  CHECK(empirical_quantile(s, 0.2500001) == 2.0);
  CHECK_THROWS_AS(empirical_quantile(std::vector<double>{}, 0.5), ValidationError);
  CHECK_THROWS_AS(empirical_quantile(s, 0.0), ValidationError);
}

TEST_CASE("quantiles are monotone in y") {
  RngStream r(1, 0);
  const auto x = stable_series(r, 500, 1.3);
  const auto dist = subsample_self_norm(x, default_block(500));
  double prev = -INFINITY;
  for (int k = 1; k <= 1000; ++k) {
    const double q = empirical_quantile(dist, k / 1000.0);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("subsample bookkeeping") {
  RngStream r(2, 0);
  const auto x = stable_series(r, 321, 1.5);
  for (std::size_t b : {2u, 26u, 320u}) {
    const auto d = subsample_self_norm(x, b);
    CHECK(d.count() == 321 - b + 1);
    CHECK(d.n == 321);
    CHECK(d.b == b);
    CHECK(std::is_sorted(d.stats.begin(), d.stats.end()));
  }
  const auto full = subsample_self_norm(x, 321);
  REQUIRE(full.count() == 1);
  CHECK(full.stats[0] == self_norm_stat(x));
  CHECK_THROWS_AS(subsample_self_norm(x, 322), ValidationError);
  CHECK_THROWS_AS(subsample_self_norm(x, 0), ValidationError);
}

TEST_CASE("subsample distributions match brute force") {
  RngStream r(3, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 5 + r.next_u64() % 196;
    auto x = stable_series(r, n, 0.4 + 1.5 * r.uniform());
    if (rep % 7 == 0) x[r.next_u64() % n] *= 1e10;
    const std::size_t b = 2 + r.next_u64() % (n - 2);
    std::vector<double> sn, md, ct;
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i + b <= n; ++i) {
      long double s = 0, q = 0, a = 0, cs = 0, cq = 0;
      for (std::size_t t = i; t < i + b; ++t) {
        s += x[t];
        q += static_cast<long double>(x[t]) * x[t];
        a += std::fabs(static_cast<long double>(x[t]));
        const long double c = static_cast<long double>(x[t]) - mean;
        cs += c;
        cq += c * c;
      }
      sn.push_back(static_cast<double>(s / std::sqrt(q)));
      md.push_back(static_cast<double>(a / b * s / std::sqrt(q)));
      ct.push_back(static_cast<double>(cs / std::sqrt(cq)));
    }
    std::sort(sn.begin(), sn.end());
    std::sort(md.begin(), md.end());
    std::sort(ct.begin(), ct.end());
    const auto d1 = subsample_self_norm(x, b);
    const auto d2 = subsample_modified(x, b);
    const auto d3 = subsample_centered(x, b);
    REQUIRE(d1.count() == sn.size());
    for (std::size_t i = 0; i < sn.size(); ++i) {
      CHECK(rel_err(d1.stats[i], sn[i]) < 1e-9);
      CHECK(rel_err(d2.stats[i], md[i]) < 1e-9);
      // Centered windows can nearly cancel; compare on the scale of 1.
      CHECK(std::abs(d3.stats[i] - ct[i]) < 1e-9 * std::max(1.0, std::abs(ct[i])));
    }
  }
}

TEST_CASE("worker count does not change results") {
  RngStream r(4, 0);
  const auto x = stable_series(r, 3000, 1.2);
  const auto one = subsample_self_norm(x, 82, 1);
  const auto many = subsample_self_norm(x, 82, 5);
  CHECK(one.stats == many.stats);
  CHECK(subsample_modified(x, 82, 1).stats == subsample_modified(x, 82, 3).stats);
  CHECK(subsample_centered(x, 82, 1).stats == subsample_centered(x, 82, 4).stats);
  const auto m = LossMatrix::from_columns({x, stable_series(r, 3000, 1.7)});
  CHECK(subsample_spa(m, 82, 1).stats == subsample_spa(m, 82, 3).stats);
}

TEST_CASE("equal-tailed test on a constant series") {
  const std::vector<double> c(400, 1.5);
  const auto rep = epa_test(c);
  CHECK(rep.statistic == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(rep.critical_upper == doctest::Approx(std::sqrt(30.0)).epsilon(1e-14));
  CHECK(rep.reject);
  CHECK(rep.block_size == std::optional<std::size_t>(30));
  for (double level : {0.5, 0.01, 1e-6}) {
    SubsampleConfig cfg;
    cfg.level = level;
    CHECK(epa_test(c, cfg).reject);
  }
}

TEST_CASE("equal-tailed decision rule") {
  RngStream r(5, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const auto x = stable_series(r, 800, 1.5, rep % 2 ? 0.3 : 0.0);
    const auto t = epa_test(x);
    const auto d = subsample_self_norm(x, default_block(800));
    CHECK(t.critical_lower == empirical_quantile(d, 0.025));
    CHECK(t.critical_upper == empirical_quantile(d, 0.975));
    CHECK(t.reject == (t.statistic < t.critical_lower || t.statistic > t.critical_upper));
    CHECK(t.method == Method::SelfNormSubsample);
  }
}

TEST_CASE("decision is scale invariant") {
  RngStream r(6, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto x = stable_series(r, 600, 1.4, 0.2 * (rep % 3));
    const bool base = epa_test(x).reject;
    for (double c : {0.25, 8.0, 3.7}) {
      std::vector<double> y(x);
      for (auto& v : y) v *= c;
      CHECK(epa_test(y).reject == base);
    }
  }
}

TEST_CASE("one-sided and symmetric alternatives") {
  RngStream r(7, 0);
  const auto x = stable_series(r, 2000, 1.5, 0.4);
  SubsampleConfig cfg;
  const auto d = subsample_self_norm(x, default_block(2000));
  cfg.alternative = Alternative::Greater;
  auto g = epa_test(x, cfg);
  CHECK(g.critical_upper == empirical_quantile(d, 0.95));
  CHECK(std::isinf(g.critical_lower));
  CHECK(g.reject == (g.statistic > g.critical_upper));
  cfg.alternative = Alternative::Less;
  auto l = epa_test(x, cfg);
  CHECK(l.critical_lower == empirical_quantile(d, 0.05));
  CHECK_FALSE(l.reject);
  cfg.alternative = Alternative::TwoSidedSymmetric;
  auto s = epa_test(x, cfg);
  CHECK(s.critical_lower == -s.critical_upper);
  CHECK(s.reject == (std::abs(s.statistic) > s.critical_upper));
}

TEST_CASE("symmetric modified-statistic test") {
  const std::vector<double> c(400, 2.0);
  const auto rep = abs_test(c);
  CHECK(rep.statistic == doctest::Approx(2.0 * 20.0).epsilon(1e-14));
  CHECK(rep.critical_upper == doctest::Approx(2.0 * std::sqrt(30.0)).epsilon(1e-14));
  CHECK(rep.reject);
  CHECK(rep.method == Method::ModifiedAbsSubsample);
}

TEST_CASE("symmetric modified-statistic test size under iid normal") {
  const int m = 1000;
  int rejections = 0;
  for (int rep = 0; rep < m; ++rep) {
    RngStream r(8, static_cast<std::uint64_t>(rep));
    rejections += abs_test(normal_series(r, 5000)).reject;
  }
  const double pct = 100.0 * rejections / m;
  CHECK(pct >= 3.0);
  CHECK(pct <= 7.0);
}

TEST_CASE("degenerate windows are counted, not fatal") {
  std::vector<double> x(200, 0.0);
  x[150] = 1.0;
  x[10] = -2.0;
  const auto d = subsample_self_norm(x, 20);
  // 11 windows cover index 10 and 20 cover index 150.
  CHECK(d.degenerate_windows == 181 - 31);
  const auto rep = epa_test(x, SubsampleConfig{20});
  CHECK(rep.degenerate_windows == 181 - 31);
  CHECK_THROWS_AS(epa_test(std::vector<double>(50, 0.0)), DegenerateError);
}

TEST_CASE("confidence interval for a constant series") {
  const std::vector<double> c(100, -3.25);
  const auto ci = mean_confidence_interval(c);
  CHECK(ci.lower == -3.25);
  CHECK(ci.upper == -3.25);
  CHECK(ci.degenerate);
}

TEST_CASE("confidence interval is the inverted centered pivot") {
  RngStream r(9, 0);
  const auto x = stable_series(r, 1000, 1.5, 2.0);
  const auto ci = mean_confidence_interval(x);
  const auto d = subsample_centered(x, default_block(1000));
  double mean = 0;
  for (double v : x) mean += v;
  mean /= 1000;
  double cs = 0;
  for (double v : x) cs += (v - mean) * (v - mean);
  const double scale = std::sqrt(cs) / 1000;
  CHECK(ci.lower == doctest::Approx(mean - scale * empirical_quantile(d, 0.975)).epsilon(1e-12));
  CHECK(ci.upper == doctest::Approx(mean - scale * empirical_quantile(d, 0.025)).epsilon(1e-12));
  CHECK(ci.lower <= ci.upper);
  CHECK_FALSE(ci.degenerate);
}

TEST_CASE("confidence interval coverage under iid normal") {
  const int m = 1000;
  int covered = 0;
  for (int rep = 0; rep < m; ++rep) {
    RngStream r(10, static_cast<std::uint64_t>(rep));
    const auto ci = mean_confidence_interval(normal_series(r, 5000, 0.0));
    covered += ci.lower <= 0.0 && 0.0 <= ci.upper;
  }
  const double pct = 100.0 * covered / m;
  CHECK(pct >= 92.0);
  CHECK(pct <= 97.0);
}

TEST_CASE("SPA with one column is the one-sided test") {
  RngStream r(11, 0);
  int agree = 0, positive_cases = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto x = stable_series(r, 500, 1.6, rep % 2 ? 0.25 : 0.0);
    SubsampleConfig one_sided;
    one_sided.alternative = Alternative::Greater;
    const auto uni = epa_test(x, one_sided);
    const auto spa = spa_test(LossMatrix::from_columns({x}));
    // Identical whenever the one-sided critical value is positive (the
    // clipping at zero is then irrelevant).
    if (uni.critical_upper > 0) {
      ++positive_cases;
      agree += uni.reject == spa.reject;
      CHECK(spa.critical_upper == uni.critical_upper);
    }
  }
  CHECK(positive_cases > 150);
  CHECK(agree == positive_cases);
}

TEST_CASE("SPA test report") {
  RngStream r(12, 0);
  const auto m = LossMatrix::from_columns({normal_series(r, 1000, 0.5), normal_series(r, 1000)});
  const auto rep = spa_test(m);
  CHECK(rep.method == Method::SpaSubsample);
  CHECK(rep.reject);
  CHECK(rep.statistic == spa_statistic(m));
  CHECK(rep.reject == (rep.statistic > rep.critical_upper));
}

TEST_CASE("power does not fall as the mean moves away from zero") {
  const int m = 400;
  std::vector<double> pct;
  for (double delta : {0.0, 0.1, 0.2, 0.4, 0.8}) {
    int rej = 0;
    for (int rep = 0; rep < m; ++rep) {
      Ar1Spec spec;
      spec.delta = delta;
      spec.noise = StableParams::symmetric(1.5);
      spec.n = 1000;
      spec.burn_in = 1000;
      spec.seed = 13;
      spec.stream_id = static_cast<std::uint64_t>(rep);
      std::vector<double> x;
      simulate_ar1_into(spec, x);
      rej += epa_test(x).reject;
    }
    pct.push_back(static_cast<double>(rej) / m);
  }
  for (std::size_t i = 1; i < pct.size(); ++i) {
    const double se = std::sqrt((pct[i] * (1 - pct[i]) + pct[i - 1] * (1 - pct[i - 1])) / m);
    CHECK(pct[i] >= pct[i - 1] - 2 * se);
  }
  CHECK(pct.back() > 0.9);
}

TEST_CASE("config validation") {
  SubsampleConfig cfg;
  cfg.block = 100;
  CHECK_THROWS_AS(cfg.validate(100), ValidationError);
  cfg.block = 1;
  CHECK_THROWS_AS(cfg.validate(100), ValidationError);
  cfg.block = 50;
  cfg.level = 1.0;
  CHECK_THROWS_AS(cfg.validate(100), ValidationError);
}
