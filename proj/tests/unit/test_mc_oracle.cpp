// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "secroute/error.hpp"
#include "secroute/mc_oracle.hpp"
#include "secroute/scp_analytic.hpp"

using namespace secroute;

TEST_CASE("PPP sampling") {
  const SquareWindow win{{5, -5}, 1000};
  double total = 0.0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    RandomStream rng({99, k});
    const auto pts = sample_ppp(1e-4, win, rng);
    for (const Vec2& p : pts.points) REQUIRE(win.contains(p));
    total += static_cast<double>(pts.points.size());
  }
  // Mean 400, standard deviation 20 per draw.
  CHECK(std::abs(total / 1000 - 400.0) < 3.0 * 20.0 / std::sqrt(1000.0));

  RandomStream rng({1});
  CHECK(sample_ppp(0.0, win, rng).points.empty());
  CHECK_THROWS_AS(sample_ppp(-1.0, win, rng), Error);
}

TEST_CASE("no eavesdroppers means always secure") {
  const auto m = testing::six_node_model(0);
  McConfig cfg;
  cfg.trials = 500;
  const auto est = simulate_scp(m, Path({0, 2, 4}), EavesdropperMode::Colluding, cfg);
  CHECK(est.value == 1.0);
  CHECK(est.method == ScpMethod::MonteCarlo);
  CHECK(*est.trials == 500);
}

TEST_CASE("single hop agrees with the closed form") {
  const auto m = NetworkModel::uniform_power({{0, 0}, {10, 0}}, 1, 4, 1e-4);
  McConfig cfg;
  cfg.trials = 40000;
  cfg.seed = 7;
  const double exact = std::exp(-0.005 * std::numbers::pi * std::numbers::pi);
  const auto est = simulate_scp(m, Path({0, 1}), EavesdropperMode::Colluding, cfg);
  const double sigma = std::sqrt(exact * (1 - exact) / cfg.trials);
  CHECK(std::abs(est.value - exact) < 3.0 * sigma);
}

TEST_CASE("colluding SNR dominates per trial") {
  const auto m = testing::six_node_model(1e-4);
  McConfig cfg;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const auto o = simulate_trial(m, Path({0, 1, 2, 4}), cfg, t);
    REQUIRE(o.colluding_snr >= o.noncolluding_snr);
    if (o.secure(EavesdropperMode::Colluding)) REQUIRE(o.secure(EavesdropperMode::NonColluding));
  }
}

TEST_CASE("sweeps are monotone and nested") {
  const auto m = testing::six_node_model(1e-4);
  McConfig cfg;
  cfg.trials = 5000;
  const std::vector<double> lambdas{1e-6, 1e-5, 1e-4};
  const auto sw = simulate_sweep(m, Path({0, 2, 4}), lambdas, cfg);
  CHECK(sw.domination_violations == 0);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    CHECK(sw.colluding[i].value <= sw.noncolluding[i].value);
    if (i > 0) {
      CHECK(sw.colluding[i].value <= sw.colluding[i - 1].value);
      CHECK(sw.noncolluding[i].value <= sw.noncolluding[i - 1].value);
    }
  }
}

TEST_CASE("results depend only on the seed") {
  const auto m = testing::six_node_model(3e-5);
  const Path p({0, 1, 2, 3, 4});
  McConfig a;
  a.trials = 3000;
  a.seed = 11;
  McConfig b = a;
  b.workers = 3;
  const auto ea = simulate_scp(m, p, EavesdropperMode::NonColluding, a);
  const auto eb = simulate_scp(m, p, EavesdropperMode::NonColluding, b);
  CHECK(ea.value == eb.value);
  CHECK(simulate_scp(m, p, EavesdropperMode::NonColluding, a).value == ea.value);
  McConfig c = a;
  c.seed = 12;
  CHECK(simulate_scp(m, p, EavesdropperMode::NonColluding, c).value != ea.value);
}

TEST_CASE("auto window is large enough") {
  const auto m = testing::six_node_model(1e-4);
  const Path p({0, 1, 2, 4});
  McConfig cfg;
  cfg.trials = 20000;
  const auto plan = plan_window(m, p, 1e-4, cfg);
  CHECK(plan.half_widths.size() >= 2);
  CHECK(1e-4 * window_tail_bound(m, p, plan.center, plan.outer_half_width()) <= 1e-3);
  McConfig wider = cfg;
  wider.extra_rings = 1;
  CHECK(plan_window(m, p, 1e-4, wider).outer_half_width() ==
        doctest::Approx(2 * plan.outer_half_width()));
  for (auto mode : {EavesdropperMode::Colluding, EavesdropperMode::NonColluding}) {
    const auto base = simulate_scp(m, p, mode, cfg);
    const auto more = simulate_scp(m, p, mode, wider);
    CHECK(more.value <= base.value);
    CHECK(base.value - more.value <= *base.ci_halfwidth);
  }
}

TEST_CASE("fixed window") {
  const auto m = testing::six_node_model(1e-4);
  McConfig cfg;
  cfg.window_half_width = 300.0;
  const auto plan = plan_window(m, Path({0, 4}), 1e-4, cfg);
  REQUIRE(plan.half_widths.size() == 1);
  CHECK(plan.outer_half_width() == 300.0);
  cfg.window_half_width = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("Wald interval") {
  CHECK(wald_halfwidth(0.5, 100, 0.95) == doctest::Approx(0.0979982).epsilon(1e-6));
  CHECK(wald_halfwidth(1.0, 100, 0.95) == 0.0);
  CHECK(wald_halfwidth(0.5, 100, 0.99) > wald_halfwidth(0.5, 100, 0.95));
}
