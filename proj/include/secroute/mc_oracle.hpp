// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo SCP by direct sampling of fading gains and eavesdropper
// positions.
//
// Each trial draws the legitimate hop gains from stream (seed, trial, 0) and
// the eavesdroppers of window region r from stream (seed, trial, 1 + r).
// Eavesdroppers are sampled once at the largest density of a sweep and each
// carries a uniform mark; at density lambda only points with
// mark < lambda / lambda_max are kept. Every density in a sweep therefore sees
// nested point sets, and the estimate is non-increasing in lambda.
//
// Fixed windows are a square of the given half-width around the centre of the
// network's bounding box. Auto windows are centred on the path's bounding box
// and built from dyadic square rings, grown until the expected number of
// outside eavesdroppers able to affect the outcome is below 1e-3 of the
// approximate outage probability.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "secroute/model.hpp"
#include "secroute/rng.hpp"

namespace secroute {

struct McConfig final {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::optional<double> window_half_width;  // empty means auto
  double confidence_level = 0.95;
  unsigned workers = 1;
  // Auto windows only: rings added beyond the planned size. Inner regions
  // keep their streams, so the estimates are nested.
  unsigned extra_rings = 0;

  void validate() const;
};

struct SquareWindow final {
  Vec2 center;
  double half_width = 1.0;

  double area() const noexcept { return 4.0 * half_width * half_width; }
  bool contains(Vec2 p) const noexcept;
};

struct EavesdropperRealization final {
  std::vector<Vec2> points;
};

EavesdropperRealization sample_ppp(double lambda_e, const SquareWindow& window, RandomStream& rng);

// Window layout used by a simulation: nested squares, region 0 the innermost
// square and region r >= 1 the ring between squares r - 1 and r.
struct WindowPlan final {
  Vec2 center;
  std::vector<double> half_widths;

  double outer_half_width() const { return half_widths.back(); }
};

// Upper bound on lambda-normalised probability that eavesdroppers outside a
// square of half-width w change a trial's outcome (either mode).
double window_tail_bound(const NetworkModel& model, const Path& path, Vec2 center, double w);

WindowPlan plan_window(const NetworkModel& model, const Path& path, double lambda_max,
                       const McConfig& cfg);

struct TrialOutcome final {
  double legit_snr = 0.0;         // min over hops of p |h|^2 / d^alpha
  double colluding_snr = 0.0;     // sum over eavesdroppers of MRC sums
  double noncolluding_snr = 0.0;  // max over eavesdroppers of MRC sums
  std::size_t eavesdroppers = 0;

  bool secure(EavesdropperMode mode) const noexcept {
    return legit_snr > (mode == EavesdropperMode::Colluding ? colluding_snr : noncolluding_snr);
  }
};

// One trial at the model's density with the window planned for that density.
TrialOutcome simulate_trial(const NetworkModel& model, const Path& path, const McConfig& cfg,
                            std::uint64_t trial);

ScpEstimate simulate_scp(const NetworkModel& model, const Path& path, EavesdropperMode mode,
                         const McConfig& cfg);

struct McSweep final {
  std::vector<double> lambdas;
  std::vector<ScpEstimate> colluding;
  std::vector<ScpEstimate> noncolluding;
  // Trials where the colluding outcome was secure but the non-colluding one
  // was not, summed over the sweep. Zero by construction.
  std::size_t domination_violations = 0;
  WindowPlan window;
};

// Both modes for every density, from a single pass of shared draws. The
// model's own lambda_e is ignored.
McSweep simulate_sweep(const NetworkModel& model, const Path& path,
                       const std::vector<double>& lambdas, const McConfig& cfg);

// Wald normal-approximation half-width.
double wald_halfwidth(double p, std::size_t n, double confidence_level);

}  // namespace secroute
