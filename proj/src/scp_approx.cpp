// SPDX-License-Identifier: Apache-2.0
#include "secroute/scp_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "secroute/error.hpp"

namespace secroute {

namespace {

void require_alpha(double alpha) {
  SECROUTE_REQUIRE(std::isfinite(alpha) && alpha > 2.0, ErrorKind::AlphaOutOfRange,
                   "alpha must be > 2");
}

}  // namespace

double k1(double alpha, double lambda_e) {
  require_alpha(alpha);
  SECROUTE_REQUIRE(lambda_e >= 0.0, ErrorKind::InvalidArgument, "lambda_e must be >= 0");
  const double delta = 2.0 / alpha;
  return std::numbers::pi * lambda_e * std::tgamma(1.0 + delta) * std::tgamma(1.0 - delta);
}

double k2(std::size_t n_hops, double alpha, double lambda_e) {
  require_alpha(alpha);
  SECROUTE_REQUIRE(n_hops >= 1, ErrorKind::InvalidArgument, "need at least one hop");
  SECROUTE_REQUIRE(lambda_e >= 0.0, ErrorKind::InvalidArgument, "lambda_e must be >= 0");
  const double delta = 2.0 / alpha;
  const double n = static_cast<double>(n_hops);
  const double ratio = n_hops < 100 ? std::tgamma(delta + n) / std::tgamma(n)
                                    : std::exp(std::lgamma(delta + n) - std::lgamma(n));
  return lambda_e * std::numbers::pi * std::tgamma(1.0 - delta) * ratio;
}

ScpEstimate scp_approx_colluding_quadrature(const NetworkModel& model, const Path& path,
                                            const QuadratureConfig& quad, std::size_t anchor) {
  path.check_against(model);
  SECROUTE_REQUIRE(anchor < path.nodes().size(), ErrorKind::InvalidArgument,
                   "anchor must be a position on the path");
  const double rate = legit_min_snr_rate(model, path);
  if (model.lambda_e() == 0.0) return ScpEstimate::approx(1.0);

  std::vector<double> scaled;
  double total = 0.0;
  for (std::size_t t : path.transmitters()) {
    scaled.push_back(model.power(t) * rate);
    total += scaled.back();
  }
  const Vec2 centre = model.node(path.nodes()[anchor]);
  const double alpha = model.alpha();
  auto f = [&](Vec2 e) {
    const double da = pow_alpha_from_sq(distance_sq(e, centre), alpha);
    double log_keep = 0.0;
    for (double s : scaled) log_keep += std::log1p(-s / (da + s));
    return -std::expm1(log_keep);
  };
  R2Layout layout;
  layout.length_scale = std::pow(total, 1.0 / alpha);
  layout.decay_exponent = alpha;
  layout.angular_panels = 1;
  const double exposure = integrate_r2(f, centre, quad, layout);
  return ScpEstimate::approx(std::exp(-model.lambda_e() * exposure));
}

ScpEstimate scp_approx_colluding(const NetworkModel& model, const Path& path,
                                 const QuadratureConfig& quad, std::optional<std::size_t> anchor) {
  path.check_against(model);
  if (anchor || !model.has_equal_powers()) {
    return scp_approx_colluding_quadrature(model, path, quad, anchor.value_or(0));
  }
  double weight = 0.0;
  for (double d : hop_distances(model, path)) weight += pow_alpha_from_sq(d * d, model.alpha());
  const double k = k2(path.hops(), model.alpha(), model.lambda_e());
  return ScpEstimate::approx(std::exp(-k * std::pow(weight, 2.0 / model.alpha())));
}

ScpEstimate scp_approx_noncolluding(const NetworkModel& model, const Path& path) {
  path.check_against(model);
  const double rate = legit_min_snr_rate(model, path);
  double power_sum = 0.0;
  for (std::size_t t : path.transmitters()) power_sum += model.power(t);
  const double k = k1(model.alpha(), model.lambda_e());
  return ScpEstimate::approx(std::exp(-k * std::pow(power_sum * rate, 2.0 / model.alpha())));
}

std::pair<double, double> lemma1_integrals(const std::vector<double>& anchors,
                                           const std::vector<double>& scales, double rel_tol) {
  SECROUTE_REQUIRE(!anchors.empty() && anchors.size() == scales.size(),
                   ErrorKind::InvalidArgument, "anchors and scales must be nonempty, same length");
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    SECROUTE_REQUIRE(std::isfinite(anchors[k]), ErrorKind::InvalidArgument,
                     "anchors must be finite");
    SECROUTE_REQUIRE(std::isfinite(scales[k]) && scales[k] >= 0.0, ErrorKind::InvalidArgument,
                     "scales must be finite and >= 0");
  }
  auto integral = [&](bool common) {
    auto f = [&](double x) {
      double log_keep = 0.0;
      for (std::size_t k = 0; k < anchors.size(); ++k) {
        if (scales[k] == 0.0) continue;
        const double s = x + (common ? anchors.front() : anchors[k]);
        const double y = s * s;
        log_keep += std::log(y / (y + scales[k]));
      }
      return -std::expm1(log_keep);
    };
    std::vector<double> cuts;
    for (double a : anchors) cuts.push_back(-(common ? anchors.front() : a));
    const double inf = std::numeric_limits<double>::infinity();
    return integrate_1d(f, -inf, inf, rel_tol, 0.0, cuts);
  };
  return {integral(false), integral(true)};
}

}  // namespace secroute
