// SPDX-License-Identifier: Apache-2.0
#include "secroute/hypoexp.hpp"

#include <algorithm>
#include <cmath>

#include "secroute/error.hpp"

namespace secroute {

namespace {

constexpr double kMaxWeightSum = 1e4;

}  // namespace

HypoExpRates::HypoExpRates(std::vector<double> rates) : rates_(std::move(rates)) {
  SECROUTE_REQUIRE(!rates_.empty(), ErrorKind::InvalidArgument, "need at least one rate");
  for (double r : rates_) {
    SECROUTE_REQUIRE(std::isfinite(r) && r > 0.0, ErrorKind::InvalidArgument,
                     "rates must be finite and > 0");
  }
}

double hypoexp_survival(const HypoExpRates& rates, double y) {
  SECROUTE_REQUIRE(y >= 0.0, ErrorKind::InvalidArgument, "y must be >= 0");
  HypoExpEvaluator eval;
  return eval.survival(rates.rates(), y);
}

double hypoexp_cdf(const HypoExpRates& rates, double y) {
  return 1.0 - hypoexp_survival(rates, y);
}

bool HypoExpEvaluator::partial_fraction_weights(std::span<const double> rates,
                                                std::vector<double>& delta) {
  const std::size_t n = rates.size();
  delta.assign(n, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double gap = rates[j] - rates[i];
      if (gap == 0.0) return false;
      d *= rates[j] / gap;
    }
    delta[i] = d;
    total += std::abs(d);
  }
  return std::isfinite(total) && total <= kMaxWeightSum;
}

double HypoExpEvaluator::survival_phase_type(std::span<const double> rates, double y) {
  const std::size_t n = rates.size();
  const double big = *std::max_element(rates.begin(), rates.end());
  if (y <= 0.0 || big * y == 0.0) return 1.0;

  int squarings = 0;
  if (big * y > 1.0) squarings = static_cast<int>(std::ceil(std::log2(big * y)));
  const double h = std::ldexp(y, -squarings);

  // P = (Q + big I) h is upper bidiagonal and entrywise nonnegative.
  a_.assign(n * n, 0.0);  // exp(P) accumulator
  b_.assign(n * n, 0.0);  // current Taylor term
  c_.assign(n * n, 0.0);  // scratch
  auto at = [n](std::vector<double>& m, std::size_t i, std::size_t j) -> double& {
    return m[i * n + j];
  };
  for (std::size_t i = 0; i < n; ++i) {
    at(a_, i, i) = 1.0;
    at(b_, i, i) = 1.0;
  }
  // Upper-triangular product c = x * y.
  auto multiply = [&](const std::vector<double>& x, const std::vector<double>& yv,
                      std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = i; k <= j; ++k) s += x[i * n + k] * yv[k * n + j];
        out[i * n + j] = s;
      }
    }
  };
  for (int term = 1; term <= 30; ++term) {
    // b <- b * P / term, exploiting the bidiagonal P.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = n; j-- > i;) {
        double s = at(b_, i, j) * (big - rates[j]) * h;
        if (j > i) s += at(b_, i, j - 1) * rates[j - 1] * h;
        at(b_, i, j) = s / term;
      }
    }
    double mx = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) {
      a_[k] += b_[k];
      mx = std::max(mx, b_[k]);
    }
    if (mx < 1e-18) break;
  }
  const double scale = std::exp(-big * h);
  for (double& v : a_) v *= scale;
  for (int s = 0; s < squarings; ++s) {
    multiply(a_, a_, c_);
    std::swap(a_, c_);
  }
  double surv = 0.0;
  for (std::size_t j = 0; j < n; ++j) surv += a_[j];
  SECROUTE_REQUIRE(std::isfinite(surv), ErrorKind::NumericallyDegenerateRates,
                   "phase-type survival is not finite");
  return std::clamp(surv, 0.0, 1.0);
}

double HypoExpEvaluator::survival(std::span<const double> rates, double y) {
  if (y <= 0.0) return 1.0;
  for (double r : rates) {
    if (r <= 0.0) return 1.0;  // a zero-rate term never completes
  }
  if (rates.size() == 1) return std::exp(-rates[0] * y);
  if (partial_fraction_weights(rates, delta_)) {
    double s = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) s += delta_[i] * std::exp(-rates[i] * y);
    return std::clamp(s, 0.0, 1.0);
  }
  return survival_phase_type(rates, y);
}

}  // namespace secroute
