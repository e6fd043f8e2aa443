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

TEST_CASE("k1") {
  CHECK(k1(4, 1) == doctest::Approx(pi * pi / 2).epsilon(1e-14));
  CHECK(k1(4, 0) == 0.0);
  CHECK(k1(1000, 1) == doctest::Approx(pi).epsilon(0.01));
  CHECK_THROWS_AS(k1(2.0, 1), Error);
}

TEST_CASE("k2") {
  CHECK(k2(1, 4, 1) == doctest::Approx(pi * pi / 2).epsilon(1e-14));
  CHECK(k2(2, 4, 1) == doctest::Approx(3 * pi * pi / 4).epsilon(1e-14));
  CHECK(k2(5, 4, 0) == 0.0);
  for (double a : {2.5, 3.0, 4.0, 6.0}) {
    CHECK(std::abs(k2(1, a, 1) / k1(a, 1) - 1) < 1e-12);
    for (std::size_t n = 1; n < 300; ++n) CHECK(k2(n + 1, a, 1) > k2(n, a, 1));
  }
  try {
    k2(1, 1.5, 1);
    FAIL("expected AlphaOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AlphaOutOfRange);
  }
  const GammaConstants g{4, 2};
  CHECK(g.k2_of_n(1) == g.k1());
}

TEST_CASE("colluding approximation, closed form") {
  const auto one = NetworkModel::uniform_power({{0, 0}, {10, 0}}, 1, 4, 1e-4);
  const double expected = std::exp(-(pi * pi / 2) * 1e-4 * 100);
  CHECK(scp_approx_colluding(one, Path({0, 1})).value == doctest::Approx(expected).epsilon(1e-14));
  CHECK(scp_approx_colluding(one.with_lambda(0), Path({0, 1})).value == 1.0);
  const auto two = NetworkModel::uniform_power({{-10, 0}, {0, 0}, {10, 0}}, 1, 4, 1e-5);
  const double e2 = std::exp(-(3 * pi * pi / 4) * 1e-5 * std::sqrt(20000.0));
  CHECK(scp_approx_colluding(two, Path({0, 1, 2})).value == doctest::Approx(e2).epsilon(1e-14));
  CHECK(e2 == doctest::Approx(0.98958).epsilon(1e-5));
}

TEST_CASE("single hop approximation equals the exact value") {
  const auto one = NetworkModel::uniform_power({{0, 0}, {10, 0}}, 1, 4, 1e-4);
  CHECK(scp_approx_colluding(one, Path({0, 1})).value ==
        doctest::Approx(scp_exact_colluding(one, Path({0, 1})).value).epsilon(1e-8));
  CHECK(scp_approx_colluding(one, Path({0, 1})).value ==
        doctest::Approx(scp_approx_noncolluding(one, Path({0, 1})).value).epsilon(1e-14));
}

TEST_CASE("quadrature branch reproduces the closed form") {
  const auto m = testing::six_node_model(3e-5);
  QuadratureConfig q;
  q.rel_tol = 1e-9;
  for (const Path& p : testing::six_node_paths()) {
    const double closed = scp_approx_colluding(m, p).value;
    for (std::size_t a = 0; a < p.nodes().size(); ++a) {
      CHECK(scp_approx_colluding_quadrature(m, p, q, a).value == doctest::Approx(closed).epsilon(1e-9));
    }
  }
}

TEST_CASE("unequal powers use the anchored quadrature") {
  const NetworkModel m({{0, 0}, {10, 0}, {20, 5}}, {1, 3, 1}, 4, 1e-5);
  const Path p({0, 1, 2});
  const double at_source = scp_approx_colluding(m, p).value;
  CHECK(at_source == scp_approx_colluding(m, p, {}, 0).value);
  // The anchored integral depends only on the powers and the bottleneck rate,
  // so moving the anchor leaves the value unchanged.
  CHECK(scp_approx_colluding(m, p, {}, 1).value == doctest::Approx(at_source).epsilon(1e-9));
  CHECK(at_source >= scp_exact_colluding(m, p).value - 1e-8);
  CHECK_THROWS_AS(scp_approx_colluding(m, p, {}, 3), Error);
}

TEST_CASE("non-colluding approximation") {
  const auto m = NetworkModel::uniform_power({{0, 0}, {5, 0}, {10, 0}}, 1, 4, 1e-4);
  const double v = scp_approx_noncolluding(m, Path({0, 1, 2})).value;
  CHECK(v == doctest::Approx(std::exp(-(pi * pi / 2) * 1e-4 * 50)).epsilon(1e-14));
  CHECK(v == doctest::Approx(0.97563).epsilon(1e-5));
  CHECK(scp_approx_noncolluding(m.with_lambda(0), Path({0, 1, 2})).value == 1.0);
}

TEST_CASE("approximations decrease with hop length and density") {
  auto at = [](double x, double lambda) {
    return NetworkModel::uniform_power({{0, 0}, {x, 2}, {20, 0}}, 1, 3.5, lambda);
  };
  const Path p({0, 1, 2});
  CHECK(scp_approx_colluding(at(10, 1e-5), p).value > scp_approx_colluding(at(14, 1e-5), p).value);
  CHECK(scp_approx_noncolluding(at(10, 1e-5), p).value > scp_approx_noncolluding(at(14, 1e-5), p).value);
  CHECK(scp_approx_colluding(at(10, 1e-5), p).value > scp_approx_colluding(at(10, 2e-5), p).value);
  CHECK(scp_approx_noncolluding(at(10, 1e-5), p).value > scp_approx_noncolluding(at(10, 2e-5), p).value);
}

TEST_CASE("anchored integrals, closed forms") {
  auto [f1, g1] = lemma1_integrals({3.0}, {4.0});
  CHECK(f1 == doctest::Approx(2 * pi).epsilon(1e-10));
  CHECK(g1 == f1);
  auto [f2, g2] = lemma1_integrals({0.0, 1.0}, {1.0, 1.0});
  CHECK(f2 == doctest::Approx(1.6 * pi).epsilon(1e-10));
  CHECK(g2 == doctest::Approx(1.5 * pi).epsilon(1e-10));
  auto [fc, gc] = lemma1_integrals({2.0, 2.0}, {1.0, 5.0});
  CHECK(fc == doctest::Approx(gc).epsilon(1e-12));
  auto [fz, gz] = lemma1_integrals({0.0, 4.0}, {0.0, 0.0});
  CHECK(fz == 0.0);
  CHECK(gz == 0.0);
}

TEST_CASE("anchored integral never exceeds the spread one") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    RandomStream rng{8, i};
    const std::size_t n = 1 + i % 5;
    std::vector<double> a, b;
    for (std::size_t k = 0; k < n; ++k) {
      a.push_back(-10 + 20 * rng.uniform());
      b.push_back(100 * rng.uniform());
    }
    auto [f, g] = lemma1_integrals(a, b);
    CHECK(f >= g * (1 - 1e-9));
  }
}

TEST_CASE("exact colluding SCP never exceeds the approximation") {
  for (std::uint64_t i = 0; i < 12; ++i) {
    RandomStream rng{31, i};
    std::vector<Vec2> nodes;
    for (int k = 0; k < 5; ++k) nodes.push_back({40 * rng.uniform(), 40 * rng.uniform()});
    const double alpha = 2.5 + 2.0 * rng.uniform();
    const auto m = NetworkModel::uniform_power(nodes, 1, alpha, 1e-4);
    const Path p({0, 1, 2, 3, 4});
    CHECK(scp_approx_colluding(m, p).value >= scp_exact_colluding(m, p).value - 1e-8);
  }
}
