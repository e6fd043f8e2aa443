// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "secroute/error.hpp"
#include "secroute/hypoexp.hpp"
#include "secroute/rng.hpp"

using namespace secroute;

TEST_CASE("single exponential") {
  for (double y : {0.0, 0.1, 1.0, 7.5}) {
    CHECK(hypoexp_cdf(HypoExpRates({1.0}), y) == doctest::Approx(-std::expm1(-y)).epsilon(1e-15));
  }
}

TEST_CASE("two distinct rates") {
  const double expected = 1 - 2 * std::exp(-1.0) + std::exp(-2.0);
  CHECK(std::abs(hypoexp_cdf(HypoExpRates({1.0, 2.0}), 1.0) - expected) < 1e-14);
  CHECK(std::abs(hypoexp_cdf(HypoExpRates({1.0, 2.0}), 1.0) - 0.399576) < 1e-6);
}

TEST_CASE("nearly equal and equal rates reach the Erlang limit") {
  const double erlang2 = 1 - 2 * std::exp(-1.0);
  CHECK(std::abs(hypoexp_cdf(HypoExpRates({1.0, 1.0 + 1e-12}), 1.0) - erlang2) < 1e-10);
  CHECK(std::abs(hypoexp_cdf(HypoExpRates({1.0, 1.0}), 1.0) - erlang2) < 1e-14);
  const double y = 2.5;
  const double erlang3 = 1 - std::exp(-y) * (1 + y + y * y / 2);
  CHECK(std::abs(hypoexp_cdf(HypoExpRates({1.0, 1.0, 1.0}), y) - erlang3) < 1e-14);
  CHECK(std::abs(hypoexp_cdf(HypoExpRates({1.0, 1.0 + 1e-7, 1.0 - 1e-7}), y) - erlang3) < 1e-8);
}

TEST_CASE("phase-type and partial fractions agree on well separated rates") {
  HypoExpEvaluator eval;
  for (std::uint64_t i = 0; i < 50; ++i) {
    RandomStream rng{5, i};
    std::vector<double> rates;
    const std::size_t n = 2 + i % 4;
    for (std::size_t k = 0; k < n; ++k) rates.push_back((k + 1) * (0.5 + rng.uniform()));
    std::vector<double> delta;
    REQUIRE(eval.partial_fraction_weights(rates, delta));
    const double y = 3.0 * rng.uniform();
    double direct = 0.0;
    for (std::size_t k = 0; k < n; ++k) direct += delta[k] * std::exp(-rates[k] * y);
    CHECK(eval.survival_phase_type(rates, y) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("widely spread rates") {
  HypoExpEvaluator eval;
  const std::vector<double> rates{1e-3, 1e6};
  // Survival of the sum is dominated by the slow term: P(X1 + X2 > y) ~ e^{-1e-3 y}.
  // 24 squarings cost roughly 2^24 ulp, hence the looser match.
  const double s = eval.survival_phase_type(rates, 10.0);
  const double exact = (1e6 * std::exp(-1e-3 * 10) - 1e-3 * std::exp(-1e6 * 10)) / (1e6 - 1e-3);
  CHECK(s == doctest::Approx(exact).epsilon(1e-8));
  CHECK(eval.survival(rates, 10.0) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("cdf is a nondecreasing probability") {
  const HypoExpRates rates({0.3, 0.3 + 1e-9, 2.0, 5.0});
  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double c = hypoexp_cdf(rates, 0.1 * i);
    CHECK(c >= prev);
    CHECK(c <= 1.0);
    prev = c;
  }
}

TEST_CASE("matches sampled sums of exponentials") {
  const std::vector<std::vector<double>> cases{{1.0, 2.0}, {0.5, 0.5 + 1e-9, 3.0}, {1, 1, 1, 1, 1}};
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const HypoExpRates rates(cases[c]);
    std::vector<double> samples;
    for (std::uint64_t i = 0; i < 100000; ++i) {
      RandomStream rng{21, c, i};
      double s = 0.0;
      for (double r : cases[c]) s += rng.exponential() / r;
      samples.push_back(s);
    }
    CHECK(testing::ks_distance(samples, [&](double y) { return hypoexp_cdf(rates, y); }) < 0.01);
  }
}

TEST_CASE("invalid rates") {
  CHECK_THROWS_AS(HypoExpRates({}), Error);
  CHECK_THROWS_AS(HypoExpRates({1.0, 0.0}), Error);
  CHECK_THROWS_AS(hypoexp_cdf(HypoExpRates({1.0}), -1.0), Error);
}
