// SPDX-License-Identifier: Apache-2.0
//
// Distribution of a sum of independent exponentials (hypoexponential).
//
// With distinct rates the CDF is the partial-fraction form
//   P(Y < y) = sum_i delta_i (1 - exp(-lambda_i y)),
//   delta_i  = prod_{j != i} lambda_j / (lambda_j - lambda_i).
// The delta_i blow up as two rates approach each other, so whenever the
// weights are ill-conditioned (sum |delta_i| > 1e4) the survival function is
// evaluated instead as the phase-type expression e_0^T exp(Q y) 1, where Q is
// the bidiagonal sub-generator. That matrix exponential is computed by
// uniformised scaling-and-squaring, which only ever adds nonnegative terms and
// so stays accurate for equal or nearly equal rates.
#pragma once

#include <span>
#include <vector>

namespace secroute {

class HypoExpRates final {
 public:
  explicit HypoExpRates(std::vector<double> rates);

  const std::vector<double>& rates() const noexcept { return rates_; }

 private:
  std::vector<double> rates_;
};

// P(Y < y) for y >= 0.
double hypoexp_cdf(const HypoExpRates& rates, double y);

// P(Y > y) for y >= 0.
double hypoexp_survival(const HypoExpRates& rates, double y);

// Allocation-free evaluator for hot loops. Rates are taken as-is (no
// validation beyond a zero-rate short-circuit).
class HypoExpEvaluator final {
 public:
  // P(Y > y) where Y is the sum of exponentials with the given rates.
  double survival(std::span<const double> rates, double y);

  // The partial-fraction weights delta_i, or false when they are too
  // ill-conditioned to use. Exposed for tests.
  bool partial_fraction_weights(std::span<const double> rates, std::vector<double>& delta);

  // Survival through the phase-type matrix exponential only. Exposed for tests.
  double survival_phase_type(std::span<const double> rates, double y);

 private:
  std::vector<double> delta_;
  std::vector<double> a_, b_, c_;
};

}  // namespace secroute
