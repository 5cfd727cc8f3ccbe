#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "snpa/dgp.hpp"
#include "snpa/errors.hpp"

using namespace snpa;

TEST_CASE("degenerate noise lands on the fixed point") {
  Ar1Spec spec;
  spec.delta = 1.0;
  spec.phi = 0.5;
  spec.noise = ConstantNoise{0.0};
  spec.n = 50;
  const auto sim = simulate_ar1(spec);
  REQUIRE(sim.series.size() == 50);
  for (double x : sim.series.values) CHECK(std::abs(x - 2.0) < 1e-12);
}

TEST_CASE("recursion residuals reproduce the recorded noise") {
  Ar1Spec spec;
  spec.delta = 0.3;
  spec.phi = 0.7;
  spec.noise = StableParams::symmetric(1.3);
  spec.n = 5000;
  spec.seed = 99;
  spec.record_noise = true;
  const auto sim = simulate_ar1(spec);
  double prev = sim.initial;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t t = 0; t < spec.n; ++t) {
    const double x = sim.series[t];
    const double z = sim.noise[t];
    const double resid = x - spec.delta - spec.phi * prev;
    const double scale = std::max({std::abs(x), std::abs(spec.phi * prev), std::abs(z), 1.0});
    CHECK(std::abs(resid - z) <= 4 * eps * scale);
    prev = x;
  }
}

TEST_CASE("AR(1) sample mean approaches 2 delta") {
  Ar1Spec spec;
  spec.delta = 0.5;
  spec.phi = 0.5;
  spec.noise = StableParams::symmetric(1.5);
  spec.n = 100000;
  spec.seed = 2024;
  const auto sim = simulate_ar1(spec);
  const double mean =
      std::accumulate(sim.series.values.begin(), sim.series.values.end(), 0.0) / 1e5;
  CHECK(std::abs(mean - 1.0) < 0.15);
}

TEST_CASE("simulate_ar1_into matches simulate_ar1") {
  Ar1Spec spec;
  spec.noise = SkewStudentParams{4.0, 0.8};
  spec.n = 300;
  spec.seed = 5;
  spec.stream_id = 17;
  std::vector<double> out;
  simulate_ar1_into(spec, out);
  CHECK(out == simulate_ar1(spec).series.values);
}

TEST_CASE("same settings give the same series") {
  Ar1Spec spec;
  spec.n = 1000;
  spec.seed = 8;
  spec.stream_id = 3;
  CHECK(simulate_ar1(spec).series.values == simulate_ar1(spec).series.values);
  auto other = spec;
  other.stream_id = 4;
  CHECK(simulate_ar1(spec).series.values != simulate_ar1(other).series.values);
}

TEST_CASE("burn-in beyond 10^4 is forgotten") {
  Ar1Spec spec;
  spec.phi = 0.9;
  spec.noise = NormalNoise{0.0, 1.0};
  spec.n = 2000;
  spec.seed = 77;
  auto longer = spec;
  longer.burn_in = 2 * kDefaultBurnIn;
  const auto a = simulate_ar1(spec).series.values;
  const auto b = simulate_ar1(longer).series.values;
  for (std::size_t t = 0; t < a.size(); ++t) CHECK(std::abs(a[t] - b[t]) <= 1e-9);
}

TEST_CASE("SRE with A = 0 returns the B draws") {
  SreSpec spec;
  spec.a = ConstantNoise{0.0};
  spec.b = StudentNoise{3.0};
  spec.n = 500;
  spec.record_noise = true;
  const auto sim = simulate_sre(spec);
  CHECK(sim.series.values == sim.noise);
}

TEST_CASE("SRE geometric decay") {
  SreSpec spec;
  spec.a = ConstantNoise{0.5};
  spec.b = ConstantNoise{0.0};
  spec.initial = 3.0;
  spec.burn_in = 0;
  spec.n = 40;
  const auto sim = simulate_sre(spec);
  for (std::size_t t = 0; t < spec.n; ++t) {
    CHECK(sim.series[t] == 3.0 * std::pow(0.5, static_cast<double>(t + 1)));
  }
}

TEST_CASE("SRE with A = phi and B = delta + Z is the AR(1)") {
  Ar1Spec ar;
  ar.delta = 0.25;
  ar.phi = 0.5;
  ar.noise = StableParams::skewed_zero_mean(1.5);
  ar.n = 3000;
  ar.seed = 31;
  ar.stream_id = 2;
  SreSpec sre;
  sre.a = ConstantNoise{ar.phi};
  auto b = StableParams::skewed_zero_mean(1.5);
  b.location += ar.delta;
  sre.b = b;
  sre.n = ar.n;
  sre.seed = ar.seed;
  sre.stream_id = ar.stream_id;
  // location + delta is not exactly delta + z for the shifted design, so
  // compare with an AR(1) whose noise already carries the shift.
  Ar1Spec ar_shift = ar;
  ar_shift.delta = 0.0;
  ar_shift.noise = b;
  CHECK(simulate_sre(sre).series.values == simulate_ar1(ar_shift).series.values);

  SreSpec plain;
  plain.a = ConstantNoise{0.5};
  plain.b = StableParams::symmetric(1.7);
  plain.n = 3000;
  plain.seed = 1;
  Ar1Spec ar_plain;
  ar_plain.phi = 0.5;
  ar_plain.noise = StableParams::symmetric(1.7);
  ar_plain.n = 3000;
  ar_plain.seed = 1;
  CHECK(simulate_sre(plain).series.values == simulate_ar1(ar_plain).series.values);
}

TEST_CASE("SRE stationarity check") {
  SreSpec explosive;
  explosive.a = NormalNoise{0.0, 3.0};
  CHECK_THROWS_AS(simulate_sre(explosive), ValidationError);

  // E log|N(0, s^2)| = log s - (gamma_E + log 2)/2 = 0 at s = 1.8874.
  SreSpec borderline;
  borderline.a = NormalNoise{0.0, 1.8874};
  borderline.n = 10;
  borderline.burn_in = 0;
  CHECK(simulate_sre(borderline).warning.has_value());

  SreSpec fine;
  fine.a = NormalNoise{0.0, 0.5};
  CHECK_FALSE(simulate_sre(fine).warning.has_value());
}

TEST_CASE("non-finite recursion reports the step") {
  Ar1Spec spec;
  spec.noise = ConstantNoise{1e308};
  spec.phi = 0.9;
  spec.n = 10;
  spec.burn_in = 0;
  try {
    simulate_ar1(spec);
    FAIL("expected SimulationError");
  } catch (const SimulationError& e) {
    CHECK(e.index() == 1);
  }
  spec.burn_in = 5;
  try {
    simulate_ar1(spec);
    FAIL("expected SimulationError");
  } catch (const SimulationError& e) {
    CHECK(e.index() == 1);  // inside the burn-in
  }
}

TEST_CASE("AR(1) settings validation") {
  Ar1Spec bad;
  bad.phi = 1.0;
  CHECK_THROWS_AS(simulate_ar1(bad), ValidationError);
  bad.phi = -0.1;
  CHECK_THROWS_AS(simulate_ar1(bad), ValidationError);
  Ar1Spec zero;
  zero.n = 0;
  CHECK_THROWS_AS(simulate_ar1(zero), ValidationError);
}
