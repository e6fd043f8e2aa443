// SPDX-License-Identifier: Apache-2.0
//
// Numerical integration used by the analytic SCP engines.
//
// integrate_r2 integrates a nonnegative function over the whole plane in
// polar coordinates about a chosen centre. The radial half-line is mapped to
// t in [0, 1) via r = L (t / (1 - t))^q, with q picked from the integrand's
// decay exponent so the transformed integrand vanishes at t = 1. The
// (theta, t) rectangle is then integrated with globally adaptive Genz-Malik
// degree-7/5 cubature. Panel boundaries are forced through every "feature"
// point (direction and radius), which keeps the subdivision shallow around
// the bumps that transmitters produce.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "secroute/model.hpp"

namespace secroute {

struct QuadratureConfig final {
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  std::size_t max_subdivisions = 40000;
  // Node count of the Chebyshev profile used for the non-colluding fading expectation.
  std::size_t fading_quadrature_order = 64;

  void validate() const;
};

struct QuadratureResult final {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

struct R2Layout final {
  double length_scale = 1.0;
  std::vector<Vec2> features;
  // f(x) = O(|x|^-decay_exponent) at infinity; must exceed 2.
  double decay_exponent = 4.0;
  std::size_t angular_panels = 8;
};

using R2Integrand = std::function<double(Vec2)>;

QuadratureResult integrate_r2_detailed(const R2Integrand& f, Vec2 center,
                                       const QuadratureConfig& quad, const R2Layout& layout = {});

inline double integrate_r2(const R2Integrand& f, Vec2 center, const QuadratureConfig& quad,
                           const R2Layout& layout = {}) {
  return integrate_r2_detailed(f, center, quad, layout).value;
}

// Adaptive cubature on an axis-aligned rectangle; exposed for testing the rule.
QuadratureResult integrate_rectangle(const std::function<double(double, double)>& f, double x0,
                                     double x1, double y0, double y1, const QuadratureConfig& quad);

// Adaptive Gauss-Kronrod on [a, b]; either end may be infinite. Breakpoints
// inside (a, b) split the range first.
double integrate_1d(const std::function<double(double)>& f, double a, double b, double rel_tol,
                    double abs_tol = 0.0, std::vector<double> breakpoints = {});

}  // namespace secroute
