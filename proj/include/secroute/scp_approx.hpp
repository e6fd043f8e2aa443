// SPDX-License-Identifier: Apache-2.0
//
// Closed-form SCP approximations.
//
// Colluding: moving every transmitter to one common anchor can only shrink
// the eavesdropper exposure integral, so the result is an upper bound on the
// exact colluding SCP. With equal powers it has the closed form
// exp(-K2(N) (sum d^alpha)^{2/alpha}).
//
// Non-colluding: co-locating the transmitters and moving the fading
// expectation inside the exponential gives exp(-K1 (sum p * sum d^alpha/p)^{2/alpha}).
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "secroute/model.hpp"
#include "secroute/quadrature.hpp"

namespace secroute {

// pi lambda Gamma(1 + 2/alpha) Gamma(1 - 2/alpha).
double k1(double alpha, double lambda_e);

// lambda pi Gamma(1 - 2/alpha) Gamma(2/alpha + N) / Gamma(N).
double k2(std::size_t n_hops, double alpha, double lambda_e);

struct GammaConstants final {
  double alpha;
  double lambda_e;

  double k1() const { return secroute::k1(alpha, lambda_e); }
  double k2_of_n(std::size_t n) const { return secroute::k2(n, alpha, lambda_e); }
};

// Equal powers use the closed form. Otherwise the anchored exposure integral
// is evaluated by quadrature with the anchor at path position `anchor`
// (default 0, the source).
ScpEstimate scp_approx_colluding(const NetworkModel& model, const Path& path,
                                 const QuadratureConfig& quad = {},
                                 std::optional<std::size_t> anchor = std::nullopt);

// The anchored integral by quadrature regardless of powers. Used to
// cross-check the closed form and to study anchor sensitivity.
ScpEstimate scp_approx_colluding_quadrature(const NetworkModel& model, const Path& path,
                                            const QuadratureConfig& quad, std::size_t anchor = 0);

ScpEstimate scp_approx_noncolluding(const NetworkModel& model, const Path& path);

// f_n = int 1 - prod_k 1 / (1 + B_k (x + a_k)^-2) dx over the real line, and
// g_n, the same integral with every a_k replaced by a_1. Returns (f_n, g_n).
std::pair<double, double> lemma1_integrals(const std::vector<double>& anchors,
                                           const std::vector<double>& scales,
                                           double rel_tol = 1e-11);

}  // namespace secroute
