// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "secroute/error.hpp"
#include "secroute/rng.hpp"
#include "secroute/scp_analytic.hpp"
#include "secroute/scp_approx.hpp"

using namespace secroute;
using std::numbers::pi;

TEST_CASE("no eavesdroppers") {
  const auto m = testing::six_node_model(0);
  for (const Path& p : testing::six_node_paths()) {
    CHECK(scp_exact_colluding(m, p).value == 1.0);
    CHECK(scp_exact_noncolluding(m, p).value == 1.0);
  }
}

TEST_CASE("single hop colluding closed form") {
  for (double d : {1.0, 5.0, 10.0, 20.0}) {
    const auto m = NetworkModel::uniform_power({{0, 0}, {d, 0}}, 1, 4, 1e-4);
    const double expected = std::exp(-(pi * pi / 2) * 1e-4 * d * d);
    CHECK(scp_exact_colluding(m, Path({0, 1})).value == doctest::Approx(expected).epsilon(1e-7));
  }
  const auto m = NetworkModel::uniform_power({{0, 0}, {10, 0}}, 1, 4, 1e-4);
  CHECK(scp_exact_colluding(m, Path({0, 1})).value == doctest::Approx(std::exp(-0.005 * std::numbers::pi * std::numbers::pi)).epsilon(1e-7));
}

TEST_CASE("single hop non-colluding against a one-dimensional reference") {
  // E_m[exp(-lambda pi Gamma(3/2) m^{-1/2})] with m ~ Exp(1e4), lambda = 1e-4,
  // evaluated independently with mpmath.
  const auto m = NetworkModel::uniform_power({{0, 0}, {10, 0}}, 1, 4, 1e-4);
  CHECK(scp_exact_noncolluding(m, Path({0, 1})).value ==
        doctest::Approx(0.95393205889324609838).epsilon(1e-8));
}

TEST_CASE("interpolated profile matches direct quadrature") {
  const auto m = testing::six_node_model(1e-5);
  const Path p({0, 1, 2, 4});
  const NonColludingProfile prof(m, p);
  CHECK(prof.tail_ratio() < 1e-6);
  for (double q : {1e-9, 1e-4, 0.3, 2.0, 25.0}) {
    const double mm = q / prof.rate();
    const double direct = noncolluding_exposure(m, p, mm);
    CHECK(prof.scaled_exposure(mm) * std::pow(mm, -0.5) == doctest::Approx(direct).epsilon(1e-5));
  }
}

TEST_CASE("profile converges in the node count") {
  const auto m = testing::six_node_model(1e-4);
  QuadratureConfig hi;
  hi.fading_quadrature_order = 96;
  for (const Path& p : testing::six_node_paths()) {
    const double a = NonColludingProfile(m, p).scp(1e-4);
    const double b = NonColludingProfile(m, p, hi).scp(1e-4);
    CHECK(std::abs(a - b) < 1e-8);
  }
}

TEST_CASE("profile limits at small and large bottleneck SNR") {
  const auto m = NetworkModel::uniform_power({{0, 0}, {10, 0}}, 1, 4, 1e-4);
  const NonColludingProfile prof(m, Path({0, 1}));
  const double g = pi * std::tgamma(1.5);
  CHECK(prof.scaled_exposure(prof.m_min()) == doctest::Approx(g).epsilon(1e-6));
  CHECK(prof.scaled_exposure(prof.m_max()) == doctest::Approx(g).epsilon(1e-6));
  // Two far-apart transmitters: m^{1/2} J(m) moves from pi E[(E1 + E2)^{1/2}]
  // (co-located limit) towards 2 pi Gamma(3/2) (separate bumps).
  const auto wide = NetworkModel::uniform_power({{0, 0}, {1, 0}, {2, 0}}, 1, 4, 0);
  const NonColludingProfile w(wide, Path({0, 1, 2}));
  const double colocated = pi * std::tgamma(2.5);  // E[sqrt(Gamma(2, 1))] = Gamma(2.5)
  CHECK(w.scaled_exposure(w.m_min()) == doctest::Approx(colocated).epsilon(1e-4));
}

TEST_CASE("exposure is reusable across densities") {
  const auto m = testing::six_node_model(1e-5);
  const Path p({0, 2, 4});
  const ColludingExposure e(m, p);
  CHECK(e.scp(1e-5) == scp_exact_colluding(m, p).value);
  CHECK(e.scp(0) == 1.0);
  double prev = 1.0;
  const NonColludingProfile prof(m, p);
  double prev_n = 1.0;
  for (double l : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3}) {
    CHECK(e.scp(l) < prev);
    CHECK(prof.scp(l) < prev_n);
    prev = e.scp(l);
    prev_n = prof.scp(l);
  }
}

TEST_CASE("colluding never beats non-colluding") {
  for (double l : {1e-6, 1e-5, 1e-4}) {
    const auto m = testing::six_node_model(l);
    for (const Path& p : testing::six_node_paths()) {
      CHECK(scp_exact_colluding(m, p).value <= scp_exact_noncolluding(m, p).value + 1e-8);
    }
  }
}

TEST_CASE("a detour that lengthens every hop lowers both exact values") {
  const auto m = NetworkModel::uniform_power({{0, 0}, {10, 0}, {20, 0}, {10, 6}}, 1, 4, 1e-4);
  const Path straight({0, 1, 2}), detour({0, 3, 2});
  CHECK(scp_exact_colluding(m, detour).value < scp_exact_colluding(m, straight).value);
  CHECK(scp_exact_noncolluding(m, detour).value < scp_exact_noncolluding(m, straight).value);
}

TEST_CASE("unequal powers") {
  const NetworkModel m({{0, 0}, {8, 3}, {15, 0}}, {2, 0.5, 1}, 3, 1e-4);
  const Path p({0, 1, 2});
  const double c = scp_exact_colluding(m, p).value, n = scp_exact_noncolluding(m, p).value;
  CHECK(c > 0.0);
  CHECK(c <= n + 1e-8);
  CHECK(scp_approx_colluding(m, p).value >= c - 1e-8);
}
