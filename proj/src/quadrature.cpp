// SPDX-License-Identifier: Apache-2.0
#include "secroute/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "secroute/error.hpp"

namespace secroute {

void QuadratureConfig::validate() const {
  SECROUTE_REQUIRE(rel_tol > 0.0 && abs_tol > 0.0, ErrorKind::InvalidArgument,
                   "quadrature tolerances must be > 0");
  SECROUTE_REQUIRE(max_subdivisions > 0, ErrorKind::InvalidArgument,
                   "max_subdivisions must be > 0");
  SECROUTE_REQUIRE(fading_quadrature_order >= 8, ErrorKind::InvalidArgument,
                   "fading_quadrature_order must be >= 8");
}

namespace {

// Genz-Malik degree-7 rule with embedded degree-5 rule, specialised to 2-D.
// Weights are normalised to unit volume.
constexpr double kLambda2 = 0.35856858280031809;  // sqrt(9/70)
constexpr double kLambda4 = 0.94868329805051380;  // sqrt(9/10)
constexpr double kLambda5 = 0.68824720161168529;  // sqrt(9/19)
constexpr double kW1 = -3816.0 / 19683.0;
constexpr double kW2 = 980.0 / 6561.0;
constexpr double kW3 = 1020.0 / 19683.0;
constexpr double kW4 = 200.0 / 19683.0;
constexpr double kW5 = 6859.0 / 19683.0 / 4.0;
constexpr double kE1 = -971.0 / 729.0;
constexpr double kE2 = 245.0 / 486.0;
constexpr double kE3 = 65.0 / 1458.0;
constexpr double kE4 = 25.0 / 729.0;
constexpr double kRatio = (kLambda2 * kLambda2) / (kLambda4 * kLambda4);

struct Region {
  double cx, cy, hx, hy;
  double value;
  double error;
  int split_axis;
};

struct RegionOrder {
  bool operator()(const Region& a, const Region& b) const { return a.error < b.error; }
};

template <class F>
Region evaluate_region(F& f, double cx, double cy, double hx, double hy, std::size_t& evals) {
  const double f0 = f(cx, cy);
  double sum2 = 0.0, sum3 = 0.0, sum4 = 0.0, sum5 = 0.0;
  double diff[2];
  {
    const double a = f(cx - kLambda2 * hx, cy), b = f(cx + kLambda2 * hx, cy);
    const double c = f(cx - kLambda4 * hx, cy), d = f(cx + kLambda4 * hx, cy);
    sum2 += a + b;
    sum3 += c + d;
    diff[0] = std::abs(a + b - 2.0 * f0 - kRatio * (c + d - 2.0 * f0));
  }
  {
    const double a = f(cx, cy - kLambda2 * hy), b = f(cx, cy + kLambda2 * hy);
    const double c = f(cx, cy - kLambda4 * hy), d = f(cx, cy + kLambda4 * hy);
    sum2 += a + b;
    sum3 += c + d;
    diff[1] = std::abs(a + b - 2.0 * f0 - kRatio * (c + d - 2.0 * f0));
  }
  for (int sx = -1; sx <= 1; sx += 2) {
    for (int sy = -1; sy <= 1; sy += 2) {
      sum4 += f(cx + sx * kLambda4 * hx, cy + sy * kLambda4 * hy);
      sum5 += f(cx + sx * kLambda5 * hx, cy + sy * kLambda5 * hy);
    }
  }
  evals += 17;
  const double vol = 4.0 * hx * hy;
  const double r7 = vol * (kW1 * f0 + kW2 * sum2 + kW3 * sum3 + kW4 * sum4 + kW5 * sum5);
  const double r5 = vol * (kE1 * f0 + kE2 * sum2 + kE3 * sum3 + kE4 * sum4);
  // Ties split along the longer side (in its own units) so squares stay squares.
  int axis = diff[0] > diff[1] ? 0 : (diff[1] > diff[0] ? 1 : (hx >= hy ? 0 : 1));
  return Region{cx, cy, hx, hy, r7, std::abs(r7 - r5), axis};
}

double neumaier_sum(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

template <class F>
QuadratureResult adaptive_rectangles(F& f, const std::vector<double>& xs,
                                     const std::vector<double>& ys, const QuadratureConfig& quad) {
  QuadratureResult out;
  std::vector<Region> heap;
  const RegionOrder order;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      heap.push_back(evaluate_region(f, 0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]),
                                     0.5 * (xs[i + 1] - xs[i]), 0.5 * (ys[j + 1] - ys[j]),
                                     out.evaluations));
    }
  }
  std::make_heap(heap.begin(), heap.end(), order);

  auto resum = [&](double& total, double& total_err) {
    std::vector<double> values;
    values.reserve(heap.size());
    total_err = 0.0;
    for (const Region& r : heap) {
      values.push_back(r.value);
      total_err += r.error;
    }
    total = neumaier_sum(values);
  };

  double total = 0.0, total_err = 0.0;
  resum(total, total_err);
  std::size_t splits = 0;
  while (total_err > std::max(quad.abs_tol, quad.rel_tol * std::abs(total))) {
    SECROUTE_REQUIRE(std::isfinite(total) && std::isfinite(total_err),
                     ErrorKind::QuadratureNonConvergence, "integrand produced a non-finite value");
    if (splits >= quad.max_subdivisions) {
      throw Error(ErrorKind::QuadratureNonConvergence,
                  "no convergence after " + std::to_string(splits) + " subdivisions (value " +
                      std::to_string(total) + ", error " + std::to_string(total_err) + ")");
    }
    std::pop_heap(heap.begin(), heap.end(), order);
    const Region r = heap.back();
    heap.pop_back();
    Region a, b;
    if (r.split_axis == 0) {
      const double h = 0.5 * r.hx;
      a = evaluate_region(f, r.cx - h, r.cy, h, r.hy, out.evaluations);
      b = evaluate_region(f, r.cx + h, r.cy, h, r.hy, out.evaluations);
    } else {
      const double h = 0.5 * r.hy;
      a = evaluate_region(f, r.cx, r.cy - h, r.hx, h, out.evaluations);
      b = evaluate_region(f, r.cx, r.cy + h, r.hx, h, out.evaluations);
    }
    total += a.value + b.value - r.value;
    total_err += a.error + b.error - r.error;
    heap.push_back(a);
    std::push_heap(heap.begin(), heap.end(), order);
    heap.push_back(b);
    std::push_heap(heap.begin(), heap.end(), order);
    ++splits;
    // Running totals drift under repeated add/subtract; resum exactly now and then.
    if (splits % 512 == 0) resum(total, total_err);
  }
  resum(out.value, out.error);
  SECROUTE_REQUIRE(std::isfinite(out.value), ErrorKind::QuadratureNonConvergence,
                   "integrand produced a non-finite value");
  return out;
}

std::vector<double> dedupe_sorted(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

}  // namespace

QuadratureResult integrate_rectangle(const std::function<double(double, double)>& f, double x0,
                                     double x1, double y0, double y1,
                                     const QuadratureConfig& quad) {
  quad.validate();
  SECROUTE_REQUIRE(x1 > x0 && y1 > y0, ErrorKind::InvalidArgument, "empty rectangle");
  auto g = [&](double x, double y) { return f(x, y); };
  return adaptive_rectangles(g, {x0, x1}, {y0, y1}, quad);
}

QuadratureResult integrate_r2_detailed(const R2Integrand& f, Vec2 center,
                                       const QuadratureConfig& quad, const R2Layout& layout) {
  quad.validate();
  SECROUTE_REQUIRE(layout.length_scale > 0.0 && std::isfinite(layout.length_scale),
                   ErrorKind::InvalidArgument, "length scale must be positive");
  SECROUTE_REQUIRE(layout.decay_exponent > 2.0, ErrorKind::InvalidArgument,
                   "integrand must decay faster than r^-2");
  SECROUTE_REQUIRE(layout.angular_panels >= 1, ErrorKind::InvalidArgument,
                   "need at least one angular panel");

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double L = layout.length_scale;
  // q >= 2 / (decay - 2) makes f r dr/dt = O(1 - t) at t -> 1.
  const double q = std::max(1.0, std::ceil(2.0 / (layout.decay_exponent - 2.0) - 1e-12));

  std::vector<double> thetas;
  for (std::size_t i = 0; i <= layout.angular_panels; ++i) {
    thetas.push_back(two_pi * static_cast<double>(i) / static_cast<double>(layout.angular_panels));
  }
  std::vector<double> ts{0.0, 1.0};
  for (const Vec2& p : layout.features) {
    const double rho = distance(p, center);
    if (rho <= 1e-12 * L) continue;
    double th = std::atan2(p.y - center.y, p.x - center.x);
    if (th < 0.0) th += two_pi;
    thetas.push_back(th);
    const double s = std::pow(rho / L, 1.0 / q);
    ts.push_back(s / (1.0 + s));
  }
  thetas = dedupe_sorted(std::move(thetas), 1e-9);
  ts = dedupe_sorted(std::move(ts), 1e-9);

  auto g = [&](double theta, double t) {
    const double u = t / (1.0 - t);
    const double uq1 = q == 1.0 ? 1.0 : std::pow(u, q - 1.0);
    const double r = L * uq1 * u;
    const double drdt = L * q * uq1 / ((1.0 - t) * (1.0 - t));
    const double fx = f(Vec2{center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
    if (fx == 0.0) return 0.0;
    return fx * r * drdt;
  };
  return adaptive_rectangles(g, thetas, ts, quad);
}

double integrate_1d(const std::function<double(double)>& f, double a, double b, double rel_tol,
                    double abs_tol, std::vector<double> breakpoints) {
  using boost::math::quadrature::gauss_kronrod;
  SECROUTE_REQUIRE(a < b, ErrorKind::InvalidArgument, "empty integration range");
  SECROUTE_REQUIRE(rel_tol > 0.0, ErrorKind::InvalidArgument, "rel_tol must be > 0");
  std::vector<double> cuts{a};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double x : breakpoints) {
    if (x > cuts.back() && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  // The tolerance is global: a coarse pass sizes every piece, then each piece
  // only has to resolve its share of rel_tol * sum(l1). A per-piece relative
  // target would chase roundoff on short pieces between close breakpoints.
  constexpr unsigned kMaxDepth = 20;
  const std::size_t np = cuts.size() - 1;
  std::vector<double> coarse_l1(np);
  double total_l1 = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    double err = 0.0;
    gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], 6, 1e-6, &err, &coarse_l1[i]);
    total_l1 += coarse_l1[i];
  }
  SECROUTE_REQUIRE(std::isfinite(total_l1), ErrorKind::QuadratureNonConvergence,
                   "integrand produced a non-finite value");
  const double budget = std::max(abs_tol, rel_tol * total_l1) / static_cast<double>(np);
  std::vector<double> pieces;
  double total_err = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    const double piece_tol =
        coarse_l1[i] > 0.0 ? std::clamp(budget / coarse_l1[i], rel_tol, 1e-3) : 1e-3;
    double err = 0.0, l1 = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], kMaxDepth,
                                                          piece_tol, &err, &l1);
    SECROUTE_REQUIRE(std::isfinite(v), ErrorKind::QuadratureNonConvergence,
                     "integrand produced a non-finite value");
    pieces.push_back(v);
    total_err += err;
  }
  if (total_err > std::max(abs_tol, rel_tol * total_l1)) {
    throw Error(ErrorKind::QuadratureNonConvergence,
                "1-D quadrature error " + std::to_string(total_err) + " above tolerance");
  }
  return neumaier_sum(pieces);
}

}  // namespace secroute
