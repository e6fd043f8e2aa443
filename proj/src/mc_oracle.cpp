// SPDX-License-Identifier: Apache-2.0
#include "secroute/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "secroute/error.hpp"
#include "secroute/scp_approx.hpp"

namespace secroute {

namespace {

constexpr double kTailFraction = 1e-3;
constexpr int kMaxDoublings = 40;
constexpr int kMaxResamples = 100;

Vec2 bbox_center(const NetworkModel& model, const std::vector<std::size_t>& idx) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (std::size_t i : idx) {
    const Vec2 p = model.node(i);
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
}

double transmitter_reach(const NetworkModel& model, const Path& path, Vec2 center) {
  double rho = 0.0;
  for (std::size_t t : path.transmitters()) rho = std::max(rho, distance(model.node(t), center));
  return rho;
}

struct Context {
  std::vector<Vec2> tx;
  std::vector<double> tx_power;
  std::vector<double> hop_rate;  // d_i^alpha / p_i
  double alpha = 4.0;
  std::vector<double> thresholds;  // lambda / lambda_max, ascending
  double lambda_max = 0.0;
  WindowPlan plan;
  std::uint64_t seed = 0;
};

struct Eavesdropper {
  double mark;
  double snr;
};

// Uniform point in region r of the plan (a square for r = 0, else a ring).
Vec2 uniform_in_region(const WindowPlan& plan, std::size_t r, RandomStream& rng) {
  const double w = plan.half_widths[r];
  const double inner = r == 0 ? 0.0 : plan.half_widths[r - 1];
  for (;;) {
    const double x = (2.0 * rng.uniform() - 1.0) * w;
    const double y = (2.0 * rng.uniform() - 1.0) * w;
    if (std::max(std::abs(x), std::abs(y)) >= inner) return {plan.center.x + x, plan.center.y + y};
  }
}

double draw_trial(const Context& ctx, std::uint64_t trial, std::vector<Eavesdropper>& eaves) {
  RandomStream legit_rng{ctx.seed, trial, 0};
  double legit = std::numeric_limits<double>::infinity();
  for (double rate : ctx.hop_rate) legit = std::min(legit, legit_rng.exponential() / rate);

  eaves.clear();
  if (ctx.lambda_max == 0.0) return legit;
  for (std::size_t r = 0; r < ctx.plan.half_widths.size(); ++r) {
    RandomStream rng{ctx.seed, trial, 1 + r};
    const double w = ctx.plan.half_widths[r];
    const double inner = r == 0 ? 0.0 : ctx.plan.half_widths[r - 1];
    const double mean = ctx.lambda_max * 4.0 * (w * w - inner * inner);
    const auto count = std::poisson_distribution<std::int64_t>(mean)(rng);
    int resamples = 0;
    for (std::int64_t j = 0; j < count; ++j) {
      Vec2 e = uniform_in_region(ctx.plan, r, rng);
      while (std::find(ctx.tx.begin(), ctx.tx.end(), e) != ctx.tx.end()) {
        if (++resamples > kMaxResamples) {
          throw Error(ErrorKind::DegenerateWindow,
                      "eavesdropper repeatedly coincides with a transmitter");
        }
        e = uniform_in_region(ctx.plan, r, rng);
      }
      const double mark = rng.uniform();
      double snr = 0.0;
      for (std::size_t k = 0; k < ctx.tx.size(); ++k) {
        snr += ctx.tx_power[k] * rng.exponential() /
               pow_alpha_from_sq(distance_sq(e, ctx.tx[k]), ctx.alpha);
      }
      eaves.push_back({mark, snr});
    }
  }
  std::sort(eaves.begin(), eaves.end(),
            [](const Eavesdropper& a, const Eavesdropper& b) { return a.mark < b.mark; });
  return legit;
}

struct Counts {
  std::vector<std::size_t> colluding, noncolluding;
  std::size_t violations = 0;
};

void run_block(const Context& ctx, std::uint64_t begin, std::uint64_t end, Counts& out) {
  std::vector<Eavesdropper> eaves;
  for (std::uint64_t t = begin; t < end; ++t) {
    const double legit = draw_trial(ctx, t, eaves);
    double sum = 0.0, mx = 0.0;
    std::size_t next = 0;
    for (std::size_t l = 0; l < ctx.thresholds.size(); ++l) {
      while (next < eaves.size() && eaves[next].mark < ctx.thresholds[l]) {
        sum += eaves[next].snr;
        mx = std::max(mx, eaves[next].snr);
        ++next;
      }
      const bool c = legit > sum, n = legit > mx;
      out.colluding[l] += c;
      out.noncolluding[l] += n;
      out.violations += c && !n;
    }
  }
}

Context make_context(const NetworkModel& model, const Path& path, std::vector<double> lambdas,
                     const McConfig& cfg) {
  Context ctx;
  path.check_against(model);
  const std::vector<double> d = hop_distances(model, path);
  for (std::size_t i = 0; i < path.hops(); ++i) {
    const std::size_t t = path.nodes()[i];
    ctx.tx.push_back(model.node(t));
    ctx.tx_power.push_back(model.power(t));
    ctx.hop_rate.push_back(pow_alpha_from_sq(d[i] * d[i], model.alpha()) / model.power(t));
  }
  ctx.alpha = model.alpha();
  ctx.seed = cfg.seed;
  for (double l : lambdas) {
    SECROUTE_REQUIRE(std::isfinite(l) && l >= 0.0, ErrorKind::InvalidArgument,
                     "lambda_e must be finite and >= 0");
  }
  ctx.lambda_max = lambdas.empty() ? 0.0 : *std::max_element(lambdas.begin(), lambdas.end());
  for (double l : lambdas) ctx.thresholds.push_back(ctx.lambda_max > 0.0 ? l / ctx.lambda_max : 0.0);
  ctx.plan = plan_window(model, path, ctx.lambda_max, cfg);
  return ctx;
}

}  // namespace

void McConfig::validate() const {
  SECROUTE_REQUIRE(trials >= 1, ErrorKind::InvalidArgument, "trials must be >= 1");
  SECROUTE_REQUIRE(!window_half_width || (std::isfinite(*window_half_width) && *window_half_width > 0.0),
                   ErrorKind::InvalidArgument, "window half-width must be > 0");
  SECROUTE_REQUIRE(confidence_level > 0.0 && confidence_level < 1.0, ErrorKind::InvalidArgument,
                   "confidence level must lie in (0, 1)");
  SECROUTE_REQUIRE(workers >= 1, ErrorKind::InvalidArgument, "workers must be >= 1");
}

bool SquareWindow::contains(Vec2 p) const noexcept {
  return std::abs(p.x - center.x) <= half_width && std::abs(p.y - center.y) <= half_width;
}

EavesdropperRealization sample_ppp(double lambda_e, const SquareWindow& window, RandomStream& rng) {
  SECROUTE_REQUIRE(std::isfinite(lambda_e) && lambda_e >= 0.0, ErrorKind::InvalidArgument,
                   "lambda_e must be finite and >= 0");
  SECROUTE_REQUIRE(window.half_width > 0.0 && std::isfinite(window.half_width),
                   ErrorKind::InvalidArgument, "window half-width must be > 0");
  EavesdropperRealization out;
  if (lambda_e == 0.0) return out;
  const auto count = std::poisson_distribution<std::int64_t>(lambda_e * window.area())(rng);
  out.points.reserve(static_cast<std::size_t>(count));
  for (std::int64_t j = 0; j < count; ++j) {
    const double x = (2.0 * rng.uniform() - 1.0) * window.half_width;
    const double y = (2.0 * rng.uniform() - 1.0) * window.half_width;
    out.points.push_back({window.center.x + x, window.center.y + y});
  }
  return out;
}

double window_tail_bound(const NetworkModel& model, const Path& path, Vec2 center, double w) {
  const double rho = transmitter_reach(model, path, center);
  if (w <= rho) return std::numeric_limits<double>::infinity();
  const double a = model.alpha();
  double power_sum = 0.0;
  for (std::size_t t : path.transmitters()) power_sum += model.power(t);
  const double s = w - rho;
  const double radial = std::pow(s, 2.0 - a) / (a - 2.0) + rho * std::pow(s, 1.0 - a) / (a - 1.0);
  return legit_min_snr_rate(model, path) * power_sum * 2.0 * std::numbers::pi * radial;
}

WindowPlan plan_window(const NetworkModel& model, const Path& path, double lambda_max,
                       const McConfig& cfg) {
  cfg.validate();
  WindowPlan plan;
  if (cfg.window_half_width) {
    std::vector<std::size_t> all(model.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    plan.center = bbox_center(model, all);
    plan.half_widths = {*cfg.window_half_width};
    return plan;
  }
  plan.center = bbox_center(model, path.nodes());
  const double rho = transmitter_reach(model, path, plan.center);
  double power_sum = 0.0;
  for (std::size_t t : path.transmitters()) power_sum += model.power(t);
  const double bump = std::pow(power_sum * legit_min_snr_rate(model, path), 1.0 / model.alpha());
  double w = 2.0 * std::max(rho, bump);
  plan.half_widths.push_back(w);
  if (lambda_max == 0.0) return plan;
  const double outage = 1.0 - scp_approx_noncolluding(model.with_lambda(lambda_max), path).value;
  for (int k = 0; k < kMaxDoublings; ++k) {
    if (lambda_max * window_tail_bound(model, path, plan.center, w) <= kTailFraction * outage) {
      for (unsigned e = 0; e < cfg.extra_rings; ++e) plan.half_widths.push_back(w *= 2.0);
      return plan;
    }
    w *= 2.0;
    plan.half_widths.push_back(w);
  }
  throw Error(ErrorKind::DegenerateWindow, "auto window did not converge");
}

TrialOutcome simulate_trial(const NetworkModel& model, const Path& path, const McConfig& cfg,
                            std::uint64_t trial) {
  const Context ctx = make_context(model, path, {model.lambda_e()}, cfg);
  std::vector<Eavesdropper> eaves;
  TrialOutcome out;
  out.legit_snr = draw_trial(ctx, trial, eaves);
  for (const Eavesdropper& e : eaves) {
    out.colluding_snr += e.snr;
    out.noncolluding_snr = std::max(out.noncolluding_snr, e.snr);
  }
  out.eavesdroppers = eaves.size();
  return out;
}

McSweep simulate_sweep(const NetworkModel& model, const Path& path,
                       const std::vector<double>& lambdas, const McConfig& cfg) {
  SECROUTE_REQUIRE(!lambdas.empty(), ErrorKind::InvalidArgument, "empty lambda sweep");
  // Thresholds must be visited in ascending order; remember where each came from.
  std::vector<std::size_t> order(lambdas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lambdas[a] < lambdas[b]; });
  std::vector<double> sorted;
  for (std::size_t i : order) sorted.push_back(lambdas[i]);
  const Context ctx = make_context(model, path, sorted, cfg);

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(cfg.workers, cfg.trials));
  std::vector<Counts> counts(workers);
  for (Counts& c : counts) {
    c.colluding.assign(sorted.size(), 0);
    c.noncolluding.assign(sorted.size(), 0);
  }
  auto block = [&](unsigned w) {
    return std::pair<std::uint64_t, std::uint64_t>{cfg.trials * w / workers,
                                                   cfg.trials * (w + 1) / workers};
  };
  if (workers == 1) {
    run_block(ctx, 0, cfg.trials, counts[0]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          const auto [b, e] = block(w);
          run_block(ctx, b, e, counts[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : threads) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  McSweep out;
  out.lambdas = lambdas;
  out.window = ctx.plan;
  out.colluding.resize(lambdas.size());
  out.noncolluding.resize(lambdas.size());
  const double n = static_cast<double>(cfg.trials);
  for (std::size_t l = 0; l < sorted.size(); ++l) {
    std::size_t c = 0, nc = 0;
    for (const Counts& k : counts) {
      c += k.colluding[l];
      nc += k.noncolluding[l];
    }
    const double pc = static_cast<double>(c) / n, pn = static_cast<double>(nc) / n;
    out.colluding[order[l]] =
        ScpEstimate::monte_carlo(pc, wald_halfwidth(pc, cfg.trials, cfg.confidence_level), cfg.trials);
    out.noncolluding[order[l]] =
        ScpEstimate::monte_carlo(pn, wald_halfwidth(pn, cfg.trials, cfg.confidence_level), cfg.trials);
  }
  for (const Counts& k : counts) out.domination_violations += k.violations;
  return out;
}

ScpEstimate simulate_scp(const NetworkModel& model, const Path& path, EavesdropperMode mode,
                         const McConfig& cfg) {
  const McSweep s = simulate_sweep(model, path, {model.lambda_e()}, cfg);
  return mode == EavesdropperMode::Colluding ? s.colluding[0] : s.noncolluding[0];
}

double wald_halfwidth(double p, std::size_t n, double confidence_level) {
  SECROUTE_REQUIRE(n >= 1, ErrorKind::InvalidArgument, "need at least one trial");
  SECROUTE_REQUIRE(confidence_level > 0.0 && confidence_level < 1.0, ErrorKind::InvalidArgument,
                   "confidence level must lie in (0, 1)");
  const boost::math::normal_distribution<double> unit;
  const double z = boost::math::quantile(unit, 0.5 + 0.5 * confidence_level);
  return z * std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace secroute
