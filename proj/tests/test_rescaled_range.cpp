#include "dsrr/rescaled_range.hpp"

#include <cmath>
#include <doctest.h>
#include <stdexcept>

#include "dsrr/errors.hpp"
#include "dsrr/rng.hpp"
#include "oracles.hpp"

using namespace dsrr;

namespace {

Series random_series(Rng& rng, std::size_t n) {
  Series s(n);
  for (double& v : s) v = rng.uniform01() * 10.0 - 5.0;
  return s;
}

// Hand-derived curve for [1,2,3,4] with a = 1.
constexpr double kRs3 = 1.2247448713915889;   // sqrt(3/2)
constexpr double kRs4 = 1.7888543819998317;   // 4/sqrt(5)

}  // namespace

TEST_SUITE("rescaled_range") {

TEST_CASE("constant prefix has S = 0 and maps to 0") {
  const Series s{5.0, 5.0, 5.0};
  CHECK(rescaled_range(s, 3) == 0.0);
  CHECK(rescaled_range(s, 1) == 0.0);
  // Constants whose mean is not representable must not leak float noise.
  const Series tenth(64, 0.1);
  CHECK(rescaled_range(tenth, 64) == 0.0);
}

TEST_CASE("two-sample and four-sample hand values") {
  const Series a{1.0, 2.0};
  CHECK(rescaled_range(a, 2) == doctest::Approx(1.0).epsilon(1e-12));
  const Series b{1.0, 2.0, 3.0, 4.0};
  CHECK(rescaled_range(b, 4) == doctest::Approx(kRs4).epsilon(1e-12));
}

TEST_CASE("parameter and input errors") {
  const Series s{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(rescaled_range(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(rescaled_range(s, 4), std::invalid_argument);
  const Series bad{1.0, std::nan(""), 2.0};
  CHECK_THROWS_AS(rescaled_range(bad, 3), DataError);
}

TEST_CASE("matches the direct-formula oracle on random series") {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(63);
    const Series s = random_series(rng, n);
    for (std::size_t prefix : {std::size_t{1}, n / 2 + 1, n}) {
      const double got = rescaled_range(s, prefix);
      const double want = oracle::rescaled_range(s, prefix);
      CHECK(got >= 0.0);
      if (want == 0.0) {
        CHECK(got == 0.0);
      } else {
        CHECK(std::fabs(got - want) / want <= 1e-12);
      }
    }
  }
}

TEST_CASE("shift and positive-scale invariance") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng.uniform_index(60);
    const Series s = random_series(rng, n);
    const double base = rescaled_range(s, n);
    Series shifted = s, scaled = s;
    const double c = rng.uniform01() * 100.0 - 50.0;
    const double k = rng.uniform01() * 9.0 + 0.5;
    for (double& v : shifted) v += c;
    for (double& v : scaled) v *= k;
    CHECK(rescaled_range(shifted, n) == doctest::Approx(base).epsilon(1e-9));
    CHECK(rescaled_range(scaled, n) == doctest::Approx(base).epsilon(1e-9));
  }
}

}  // TEST_SUITE

TEST_SUITE("rs_curve") {

TEST_CASE("block of 40 with step 10 yields 4 points") {
  Rng rng(7);
  const Series block = random_series(rng, 40);
  const RsCurve curve = rs_curve(block, 10);
  REQUIRE(curve.size() == 4);
  CHECK(curve.prefix_lengths == std::vector<std::size_t>{10, 20, 30, 40});
}

TEST_CASE("step-1 curve over [1,2,3,4]") {
  const Series block{1.0, 2.0, 3.0, 4.0};
  const RsCurve curve = rs_curve(block, 1);
  REQUIRE(curve.size() == 4);
  CHECK(curve.ratios[0] == 0.0);
  CHECK(curve.ratios[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curve.ratios[2] == doctest::Approx(kRs3).epsilon(1e-12));
  CHECK(curve.ratios[3] == doctest::Approx(kRs4).epsilon(1e-12));
}

TEST_CASE("non-multiple block length appends a final point") {
  Rng rng(8);
  const Series block = random_series(rng, 7);
  const RsCurve curve = rs_curve(block, 3);
  CHECK(curve.prefix_lengths == std::vector<std::size_t>{3, 6, 7});
}

TEST_CASE("constant block gives all-zero ratios") {
  const Series block(17, 3.5);
  for (std::size_t step : {std::size_t{1}, std::size_t{4}}) {
    for (double r : rs_curve(block, step).ratios) CHECK(r == 0.0);
  }
}

TEST_CASE("step-1 curve starts at exactly zero on random blocks") {
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const Series block = random_series(rng, 2 + rng.uniform_index(50));
    CHECK(rs_curve(block, 1).ratios[0] == 0.0);
  }
}

TEST_CASE("step out of range") {
  const Series block{1.0, 2.0};
  CHECK_THROWS_AS(rs_curve(block, 0), std::invalid_argument);
  CHECK_THROWS_AS(rs_curve(block, 3), std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("differentiate") {

TEST_CASE("pairwise differences with replicated boundary") {
  RsCurve curve;
  curve.prefix_lengths = {1, 2, 3, 4};
  curve.ratios = {0.0, 1.0, kRs3, kRs4};
  const Series d = differentiate(curve);
  REQUIRE(d.size() == 4);
  CHECK(d[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(0.22474487139158894).epsilon(1e-12));
  CHECK(d[2] == doctest::Approx(0.56410951060824277).epsilon(1e-12));
  CHECK(d[3] == d[2]);
}

TEST_CASE("constant curve maps to zeros, single point to [0]") {
  RsCurve flat;
  flat.prefix_lengths = {1, 2, 3};
  flat.ratios = {2.0, 2.0, 2.0};
  CHECK(differentiate(flat) == Series{0.0, 0.0, 0.0});

  RsCurve single;
  single.prefix_lengths = {5};
  single.ratios = {1.7};
  CHECK(differentiate(single) == Series{0.0});
}

TEST_CASE("cumulative sum reconstructs the curve") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Series block(4 + rng.uniform_index(60));
    for (double& v : block) v = rng.uniform01();
    const RsCurve curve = rs_curve(block, 1);
    const Series d = differentiate(curve);
    double acc = curve.ratios[0];
    for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
      CHECK(acc == curve.ratios[k]);
      acc += d[k];
    }
  }
}

}  // TEST_SUITE

TEST_SUITE("dsrr_transform") {

TEST_CASE("two-block example") {
  const Series feature{1.0, 2.0, 3.0, 4.0, 10.0, 10.0, 10.0, 10.0};
  DsrrConfig config;
  config.window = 4;
  config.step = 1;
  const Series out = dsrr_transform(feature, config);
  REQUIRE(out.size() == 8);
  CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(out[1] == doctest::Approx(0.22474487139158894).epsilon(1e-9));
  CHECK(out[2] == doctest::Approx(0.56410951060824277).epsilon(1e-9));
  CHECK(out[3] == doctest::Approx(0.56410951060824277).epsilon(1e-9));
  for (std::size_t i = 4; i < 8; ++i) CHECK(out[i] == 0.0);
}

TEST_CASE("constant input maps to zero everywhere") {
  const Series feature(123, 42.0);
  for (auto edge : {EdgePolicy::kShrink, EdgePolicy::kDrop}) {
    DsrrConfig config;
    config.window = 10;
    config.step = 3;
    config.edge = edge;
    for (double v : dsrr_transform(feature, config)) CHECK(v == 0.0);
  }
}

TEST_CASE("output length equals input length for every geometry") {
  Rng rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(200);
    const Series feature = random_series(rng, n);
    DsrrConfig config;
    config.window = 2 + rng.uniform_index(50);
    config.step = 1 + rng.uniform_index(config.window);
    config.edge = trial % 2 == 0 ? EdgePolicy::kShrink : EdgePolicy::kDrop;
    const Series out = dsrr_transform(feature, config);
    CHECK(out.size() == n);
    for (double v : out) CHECK(std::isfinite(v));
  }
}

TEST_CASE("step > 1 broadcasts derivative values over prefix segments") {
  Rng rng(77);
  const Series feature = random_series(rng, 40);
  DsrrConfig config;
  config.window = 40;
  config.step = 10;
  const Series out = dsrr_transform(feature, config);
  REQUIRE(out.size() == 40);
  for (std::size_t seg = 0; seg < 4; ++seg) {
    for (std::size_t i = 1; i < 10; ++i) {
      CHECK(out[seg * 10 + i] == out[seg * 10]);
    }
  }
}

TEST_CASE("trailing partial block policies") {
  Rng rng(5);
  Series feature = random_series(rng, 25);
  DsrrConfig config;
  config.window = 10;

  TransformStats stats;
  const Series shrunk = dsrr_transform(feature, config, &stats);
  CHECK(shrunk.size() == 25);
  CHECK(stats.partial_samples == 5);
  CHECK_FALSE(stats.partial_dropped);

  config.edge = EdgePolicy::kDrop;
  const Series dropped = dsrr_transform(feature, config, &stats);
  CHECK(dropped.size() == 25);
  CHECK(stats.partial_samples == 5);
  CHECK(stats.partial_dropped);
  for (std::size_t i = 20; i < 25; ++i) CHECK(dropped[i] == 0.0);

  // A leftover block of length 1 maps to [0].
  Series one = random_series(rng, 11);
  config.edge = EdgePolicy::kShrink;
  const Series out = dsrr_transform(one, config);
  CHECK(out.size() == 11);
  CHECK(out[10] == 0.0);
}

TEST_CASE("config invariants are enforced") {
  const Series feature{1.0, 2.0, 3.0};
  DsrrConfig config;
  config.window = 1;
  CHECK_THROWS_AS(dsrr_transform(feature, config), std::invalid_argument);
  config.window = 4;
  config.step = 5;
  CHECK_THROWS_AS(dsrr_transform(feature, config), std::invalid_argument);
  config.step = 0;
  CHECK_THROWS_AS(dsrr_transform(feature, config), std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("hurst_exponent") {

TEST_CASE("linear ramp fits h near 1") {
  Series ramp(64);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i + 1);
  const std::vector<std::size_t> lengths{8, 16, 32, 64};
  const HurstFit fit = hurst_exponent(ramp, lengths);
  CHECK(fit.h > 0.95);
  CHECK(fit.h < 1.05);
  CHECK(fit.c > 0.0);
  CHECK(fit.points_used == 4);
  CHECK(fit.r_squared > 0.99);
}

TEST_CASE("iid noise fits h near one half") {
  double sum = 0.0;
  const std::vector<std::size_t> lengths{16, 32, 64, 128, 256, 512};
  const int seeds = 5;  // the acceptance suite runs the full 30-seed version
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed) + 100);
    Series s(4096);
    for (double& v : s) v = rng.normal();
    sum += hurst_exponent(s, lengths).h;
  }
  const double mean = sum / seeds;
  CHECK(mean > 0.35);
  CHECK(mean < 0.70);
}

TEST_CASE("zero-ratio points are excluded and counted") {
  Series s(32, 1.0);
  s[31] = 2.0;  // prefixes below 32 are constant
  const std::vector<std::size_t> lengths{4, 8, 16, 32};
  CHECK_THROWS_AS(hurst_exponent(s, lengths), EstimationError);
}

TEST_CASE("parameter errors") {
  Series s(16, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<double>(i % 5);
  const std::vector<std::size_t> bad_low{1, 8};
  CHECK_THROWS_AS(hurst_exponent(s, bad_low), std::invalid_argument);
  const std::vector<std::size_t> bad_high{8, 32};
  CHECK_THROWS_AS(hurst_exponent(s, bad_high), std::invalid_argument);
  const std::vector<std::size_t> empty;
  CHECK_THROWS_AS(hurst_exponent(s, empty), std::invalid_argument);
}

}  // TEST_SUITE
