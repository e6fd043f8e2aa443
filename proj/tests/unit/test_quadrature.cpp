// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "fixtures.hpp"
#include "secroute/error.hpp"
#include "secroute/quadrature.hpp"

using namespace secroute;
using std::numbers::pi;

TEST_CASE("plane integral of 1 / (1 + r^4)") {
  QuadratureConfig q;
  const double v = integrate_r2([](Vec2 x) {
    const double r2 = x.x * x.x + x.y * x.y;
    return 1.0 / (1.0 + r2 * r2);
  }, {0, 0}, q);
  CHECK(v == doctest::Approx(pi * pi / 2).epsilon(1e-6));
}

TEST_CASE("plane integral of a Gaussian, off-centre") {
  QuadratureConfig q;
  R2Layout layout;
  layout.decay_exponent = 8;
  const double v = integrate_r2([](Vec2 x) {
    return std::exp(-((x.x - 3) * (x.x - 3) + (x.y + 1) * (x.y + 1)));
  }, {0, 0}, q, layout);
  CHECK(v == doctest::Approx(pi).epsilon(1e-6));
}

TEST_CASE("two-bump integrand is stable when angular panels double") {
  const auto nodes = testing::six_nodes();
  const double s = 20000.0;
  auto f = [&](Vec2 e) {
    double keep = 0.0;
    for (Vec2 t : {nodes[0], nodes[2]}) {
      const double d2 = distance_sq(e, t);
      keep += std::log1p(-s / (d2 * d2 + s));
    }
    return -std::expm1(keep);
  };
  QuadratureConfig q;
  q.rel_tol = 1e-8;
  R2Layout a;
  a.length_scale = 12;
  a.features = {nodes[0], nodes[2]};
  R2Layout b = a;
  b.angular_panels = 16;
  const Vec2 c{-5, 0};
  const double va = integrate_r2(f, c, q, a), vb = integrate_r2(f, c, q, b);
  CHECK(std::abs(va - vb) <= 1e-6 * va);
}

TEST_CASE("rectangle rule is exact on low-degree polynomials") {
  QuadratureConfig q;
  const auto r = integrate_rectangle([](double x, double y) { return x * x * y + 3 * y * y * y * y; },
                                     0, 2, -1, 1, q);
  CHECK(r.value == doctest::Approx(2.4).epsilon(1e-13));
}

TEST_CASE("one-dimensional integrals") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(integrate_1d([](double x) { return 1.0 / (1.0 + x * x); }, -inf, inf, 1e-12) ==
        doctest::Approx(pi).epsilon(1e-11));
  CHECK(integrate_1d([](double x) { return std::abs(x - 0.3); }, 0, 1, 1e-12, 0, {0.3}) ==
        doctest::Approx(0.29).epsilon(1e-12));
}

TEST_CASE("non-convergence is reported") {
  QuadratureConfig q;
  q.max_subdivisions = 3;
  q.rel_tol = 1e-12;
  try {
    integrate_r2([](Vec2 x) { return 1.0 / (1.0 + std::pow(x.x * x.x + x.y * x.y, 1.5)); }, {0, 0}, q,
                 R2Layout{1.0, {{7, 3}}, 3.0, 8});
    FAIL("expected non-convergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QuadratureNonConvergence);
  }
}

TEST_CASE("invalid settings") {
  QuadratureConfig q;
  q.rel_tol = 0;
  CHECK_THROWS_AS(integrate_r2([](Vec2) { return 0.0; }, {0, 0}, q), Error);
  QuadratureConfig ok;
  R2Layout slow;
  slow.decay_exponent = 2.0;
  CHECK_THROWS_AS(integrate_r2([](Vec2) { return 0.0; }, {0, 0}, ok, slow), Error);
}

TEST_CASE("nearly coincident breakpoints") {
  const double inf = std::numeric_limits<double>::infinity();
  auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  const double v = integrate_1d(f, -inf, inf, 1e-11, 0.0, {0.5, 0.5 + 1e-7, 0.5 + 2e-7});
  CHECK(v == doctest::Approx(std::numbers::pi).epsilon(1e-10));
}
