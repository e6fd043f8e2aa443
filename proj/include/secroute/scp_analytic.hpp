// SPDX-License-Identifier: Apache-2.0
//
// Exact SCP of a decode-and-forward path under a PPP of eavesdroppers.
//
// Colluding: P = exp(-lambda I), with
//   I = int_{R^2} 1 - prod_k 1 / (1 + p_k R / d_k(x)^alpha) dx,  R = sum_i d_i^alpha / p_i.
//
// Non-colluding: P = E_m[exp(-lambda J(m))] where m ~ Exp(R) is the bottleneck
// legitimate SNR and J(m) = int_{R^2} P(sum_k p_k G_k / d_k(x)^alpha > m) dx
// is an integral of hypoexponential survival functions. G(m) = m^{2/alpha} J(m)
// tends to finite limits at both ends and is smooth in log m, so it is
// tabulated once on Chebyshev nodes in log m; the outer expectation is then a
// cheap 1-D adaptive integral for every lambda.
//
// I and G do not depend on lambda, so the profile objects below can be built
// once per path and evaluated for a whole lambda sweep.
#pragma once

#include <vector>

#include "secroute/model.hpp"
#include "secroute/quadrature.hpp"

namespace secroute {

class ColludingExposure final {
 public:
  ColludingExposure(const NetworkModel& model, const Path& path, const QuadratureConfig& quad = {});

  double integral() const noexcept { return integral_; }
  double scp(double lambda_e) const;

 private:
  double integral_;
};

class NonColludingProfile final {
 public:
  NonColludingProfile(const NetworkModel& model, const Path& path,
                      const QuadratureConfig& quad = {});

  // Interpolated m^{2/alpha} J(m); m must lie inside [m_min(), m_max()].
  double scaled_exposure(double m) const;
  double m_min() const noexcept { return m_min_; }
  double m_max() const noexcept { return m_max_; }
  double rate() const noexcept { return rate_; }
  // Largest magnitude of the two trailing Chebyshev coefficients, relative to
  // the leading one. A cheap proxy for the interpolation error.
  double tail_ratio() const noexcept { return tail_ratio_; }

  double scp(double lambda_e) const;

 private:
  double alpha_;
  double rate_;
  double m_min_, m_max_;
  double u_mid_, u_half_;
  double tail_ratio_ = 0.0;
  std::vector<double> coeffs_;
};

// J(m) by direct 2-D quadrature, no interpolation.
double noncolluding_exposure(const NetworkModel& model, const Path& path, double m,
                             const QuadratureConfig& quad = {});

ScpEstimate scp_exact_colluding(const NetworkModel& model, const Path& path,
                                const QuadratureConfig& quad = {});

ScpEstimate scp_exact_noncolluding(const NetworkModel& model, const Path& path,
                                   const QuadratureConfig& quad = {});

}  // namespace secroute
