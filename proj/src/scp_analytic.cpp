// SPDX-License-Identifier: Apache-2.0
#include "secroute/scp_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "secroute/error.hpp"
#include "secroute/hypoexp.hpp"

namespace secroute {

namespace {

// Bottleneck SNR quantiles that bound the tabulated range. The mass outside
// is below 1e-14 on the left and e^-60 on the right.
constexpr double kLowQuantile = 1e-14;
constexpr double kHighQuantile = 60.0;

struct Transmitters {
  std::vector<Vec2> pos;
  std::vector<double> power;
  Vec2 centroid;
  double spread = 0.0;  // max distance from the centroid
};

Transmitters gather(const NetworkModel& model, const Path& path) {
  Transmitters t;
  for (std::size_t i : path.transmitters()) {
    t.pos.push_back(model.node(i));
    t.power.push_back(model.power(i));
    t.centroid.x += model.node(i).x;
    t.centroid.y += model.node(i).y;
  }
  const double n = static_cast<double>(t.pos.size());
  t.centroid.x /= n;
  t.centroid.y /= n;
  for (const Vec2& p : t.pos) t.spread = std::max(t.spread, distance(p, t.centroid));
  return t;
}

double exposure_at(const Transmitters& tx, double alpha, double m, const QuadratureConfig& quad) {
  double power_sum = 0.0;
  for (double p : tx.power) power_sum += p;
  R2Layout layout;
  layout.length_scale = std::max(tx.spread, std::pow(power_sum / m, 1.0 / alpha));
  layout.features = tx.pos;
  // The survival function decays like exp(-c r^alpha); any exponent works.
  layout.decay_exponent = 4.0;
  HypoExpEvaluator eval;
  std::vector<double> rates(tx.pos.size());
  auto f = [&](Vec2 e) {
    for (std::size_t k = 0; k < rates.size(); ++k) {
      rates[k] = pow_alpha_from_sq(distance_sq(e, tx.pos[k]), alpha) / tx.power[k];
    }
    return eval.survival(rates, m);
  };
  return integrate_r2(f, tx.centroid, quad, layout);
}

}  // namespace

ColludingExposure::ColludingExposure(const NetworkModel& model, const Path& path,
                                     const QuadratureConfig& quad) {
  path.check_against(model);
  const double rate = legit_min_snr_rate(model, path);
  const Transmitters tx = gather(model, path);
  std::vector<double> scaled;
  double total = 0.0;
  for (double p : tx.power) {
    scaled.push_back(p * rate);
    total += p * rate;
  }
  const double alpha = model.alpha();
  auto f = [&](Vec2 e) {
    double log_keep = 0.0;
    for (std::size_t k = 0; k < scaled.size(); ++k) {
      const double da = pow_alpha_from_sq(distance_sq(e, tx.pos[k]), alpha);
      log_keep += std::log1p(-scaled[k] / (da + scaled[k]));
    }
    return -std::expm1(log_keep);
  };
  R2Layout layout;
  layout.length_scale = std::max(tx.spread, std::pow(total, 1.0 / alpha));
  layout.features = tx.pos;
  layout.decay_exponent = alpha;
  integral_ = integrate_r2(f, tx.centroid, quad, layout);
}

double ColludingExposure::scp(double lambda_e) const {
  SECROUTE_REQUIRE(lambda_e >= 0.0, ErrorKind::InvalidArgument, "lambda_e must be >= 0");
  if (lambda_e == 0.0) return 1.0;
  return std::exp(-lambda_e * integral_);
}

NonColludingProfile::NonColludingProfile(const NetworkModel& model, const Path& path,
                                         const QuadratureConfig& quad)
    : alpha_(model.alpha()), rate_(legit_min_snr_rate(model, path)) {
  quad.validate();
  const Transmitters tx = gather(model, path);
  m_min_ = kLowQuantile / rate_;
  m_max_ = kHighQuantile / rate_;
  const double u0 = std::log(m_min_), u1 = std::log(m_max_);
  u_mid_ = 0.5 * (u0 + u1);
  u_half_ = 0.5 * (u1 - u0);

  const std::size_t n = quad.fading_quadrature_order;
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) /
                              static_cast<double>(n));
    const double m = std::exp(u_mid_ + u_half_ * x);
    values[j] = std::pow(m, 2.0 / alpha_) * exposure_at(tx, alpha_, m, quad);
  }
  coeffs_.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += values[j] * std::cos(std::numbers::pi * static_cast<double>(k) *
                                (static_cast<double>(j) + 0.5) / static_cast<double>(n));
    }
    coeffs_[k] = 2.0 * s / static_cast<double>(n);
  }
  coeffs_[0] *= 0.5;
  tail_ratio_ = std::max(std::abs(coeffs_[n - 1]), std::abs(coeffs_[n - 2])) / std::abs(coeffs_[0]);
}

double NonColludingProfile::scaled_exposure(double m) const {
  SECROUTE_REQUIRE(m >= m_min_ * (1 - 1e-12) && m <= m_max_ * (1 + 1e-12),
                   ErrorKind::InvalidArgument, "m outside the tabulated range");
  const double x = std::clamp((std::log(m) - u_mid_) / u_half_, -1.0, 1.0);
  // Clenshaw recurrence.
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + coeffs_[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + coeffs_[0];
}

double NonColludingProfile::scp(double lambda_e) const {
  SECROUTE_REQUIRE(lambda_e >= 0.0, ErrorKind::InvalidArgument, "lambda_e must be >= 0");
  if (lambda_e == 0.0) return 1.0;
  // With m = e^s / R the Exp(R) density becomes e^{s - e^s} ds.
  auto f = [&](double s) {
    const double m = std::exp(s) / rate_;
    const double j = scaled_exposure(m) * std::pow(m, -2.0 / alpha_);
    return std::exp(s - std::exp(s)) * -std::expm1(-lambda_e * j);
  };
  const double miss =
      integrate_1d(f, std::log(kLowQuantile), std::log(kHighQuantile), 1e-10, 1e-15);
  return std::clamp(1.0 - miss, 0.0, 1.0);
}

double noncolluding_exposure(const NetworkModel& model, const Path& path, double m,
                             const QuadratureConfig& quad) {
  path.check_against(model);
  SECROUTE_REQUIRE(m > 0.0 && std::isfinite(m), ErrorKind::InvalidArgument, "m must be > 0");
  hop_distances(model, path);
  return exposure_at(gather(model, path), model.alpha(), m, quad);
}

ScpEstimate scp_exact_colluding(const NetworkModel& model, const Path& path,
                                const QuadratureConfig& quad) {
  path.check_against(model);
  if (model.lambda_e() == 0.0) {
    hop_distances(model, path);
    return ScpEstimate::exact(1.0);
  }
  return ScpEstimate::exact(ColludingExposure(model, path, quad).scp(model.lambda_e()));
}

ScpEstimate scp_exact_noncolluding(const NetworkModel& model, const Path& path,
                                   const QuadratureConfig& quad) {
  path.check_against(model);
  if (model.lambda_e() == 0.0) {
    hop_distances(model, path);
    return ScpEstimate::exact(1.0);
  }
  return ScpEstimate::exact(NonColludingProfile(model, path, quad).scp(model.lambda_e()));
}

}  // namespace secroute
