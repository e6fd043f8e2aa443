// SPDX-License-Identifier: Apache-2.0
#include "secroute/experiments.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <tuple>
#include <ostream>

#include "secroute/error.hpp"
#include "secroute/mc_oracle.hpp"
#include "secroute/rng.hpp"
#include "secroute/scp_analytic.hpp"
#include "secroute/scp_approx.hpp"

namespace secroute {

namespace {

constexpr std::uint64_t kLemmaTag = 0x6c656d6d61ULL;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<EavesdropperMode> modes_of(ModeSelection s) {
  switch (s) {
    case ModeSelection::Colluding: return {EavesdropperMode::Colluding};
    case ModeSelection::NonColluding: return {EavesdropperMode::NonColluding};
    case ModeSelection::Both: break;
  }
  return {EavesdropperMode::Colluding, EavesdropperMode::NonColluding};
}

bool wants(MethodSelection s, ScpMethod m) {
  switch (s) {
    case MethodSelection::MonteCarlo: return m == ScpMethod::MonteCarlo;
    case MethodSelection::Exact: return m == ScpMethod::Exact;
    case MethodSelection::Approx: return m == ScpMethod::Approx;
    case MethodSelection::All: break;
  }
  return true;
}

void write_meta(std::ostream& out, const CsvMeta& meta, const char* schema) {
  out << "# " << kToolVersion << ' ' << meta.command << '\n';
  out << "# schema: " << schema << '\n';
  out << "# seed: " << meta.seed << '\n';
  out << "# config_fnv1a: " << meta.config_hash << '\n';
  for (const std::string& n : meta.notes) out << "# " << n << '\n';
}

McConfig mc_config(const ScenarioConfig& cfg) {
  McConfig mc;
  mc.trials = cfg.mc_trials;
  mc.seed = cfg.seed;
  mc.window_half_width = cfg.window_half_width;
  mc.workers = cfg.workers;
  mc.confidence_level = cfg.confidence_level;
  return mc;
}

// Exact-SCP evaluator for one network that caches the lambda-free profiles.
class ExactCache {
 public:
  ExactCache(const NetworkModel& model, const QuadratureConfig& quad) : model_(model), quad_(quad) {}

  double scp(const Path& path, EavesdropperMode mode, double lambda) {
    if (mode == EavesdropperMode::Colluding) {
      auto it = colluding_.find(path);
      if (it == colluding_.end()) {
        it = colluding_.emplace(path, ColludingExposure(model_, path, quad_).integral()).first;
      }
      return lambda == 0.0 ? 1.0 : std::exp(-lambda * it->second);
    }
    auto it = noncolluding_.find(path);
    if (it == noncolluding_.end()) {
      it = noncolluding_
               .emplace(path, std::make_unique<NonColludingProfile>(model_, path, quad_))
               .first;
    }
    return it->second->scp(lambda);
  }

 private:
  const NetworkModel& model_;
  QuadratureConfig quad_;
  std::map<Path, double> colluding_;
  std::map<Path, std::unique_ptr<NonColludingProfile>> noncolluding_;
};

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<ExperimentRecord> run_scp_eval(const ScenarioConfig& cfg) {
  SECROUTE_REQUIRE(!cfg.nodes.empty() && cfg.path, ErrorKind::InvalidArgument,
                   "scp-eval needs explicit node entries and a path");
  const NetworkModel model = cfg.network(0.0);
  const Path path(*cfg.path);
  path.check_against(model);
  const auto modes = modes_of(cfg.mode);
  const std::string id = "path " + path.to_string();

  // cell[(lambda index, mode, method)] -> record
  std::map<std::tuple<std::size_t, int, int>, ExperimentRecord> cells;
  auto put = [&](std::size_t li, EavesdropperMode mode, ScpMethod method, double v,
                 std::optional<double> ci, double wall) {
    cells.insert_or_assign({li, static_cast<int>(mode), static_cast<int>(method)},
                           ExperimentRecord{id, cfg.lambda_e[li], method, mode, path, v, ci, wall});
  };

  if (wants(cfg.method, ScpMethod::MonteCarlo)) {
    const auto t0 = Clock::now();
    const McSweep sweep = simulate_sweep(model, path, cfg.lambda_e, mc_config(cfg));
    const double wall = seconds_since(t0);
    for (std::size_t li = 0; li < cfg.lambda_e.size(); ++li) {
      for (EavesdropperMode m : modes) {
        const ScpEstimate& e =
            m == EavesdropperMode::Colluding ? sweep.colluding[li] : sweep.noncolluding[li];
        put(li, m, ScpMethod::MonteCarlo, e.value, e.ci_halfwidth, wall);
      }
    }
  }
  if (wants(cfg.method, ScpMethod::Exact)) {
    for (EavesdropperMode m : modes) {
      const auto t0 = Clock::now();
      ExactCache cache(model, cfg.quadrature);
      std::vector<double> values;
      for (double l : cfg.lambda_e) values.push_back(cache.scp(path, m, l));
      const double wall = seconds_since(t0);
      for (std::size_t li = 0; li < values.size(); ++li) {
        put(li, m, ScpMethod::Exact, values[li], std::nullopt, wall);
      }
    }
  }
  if (wants(cfg.method, ScpMethod::Approx)) {
    for (std::size_t li = 0; li < cfg.lambda_e.size(); ++li) {
      const NetworkModel at = model.with_lambda(cfg.lambda_e[li]);
      for (EavesdropperMode m : modes) {
        const auto t0 = Clock::now();
        const double v = m == EavesdropperMode::Colluding
                             ? scp_approx_colluding(at, path, cfg.quadrature).value
                             : scp_approx_noncolluding(at, path).value;
        put(li, m, ScpMethod::Approx, v, std::nullopt, seconds_since(t0));
      }
    }
  }
  std::vector<ExperimentRecord> rows;
  for (auto& [key, rec] : cells) rows.push_back(std::move(rec));
  return rows;
}

void write_scp_eval_csv(std::ostream& out, const std::vector<ExperimentRecord>& rows,
                        const CsvMeta& meta) {
  write_meta(out, meta, "scp-eval/1");
  if (!rows.empty()) out << "# path: " << rows.front().path.to_string() << '\n';
  out << "lambda_e,mode,method,scp,ci_halfwidth\n";
  for (const ExperimentRecord& r : rows) {
    out << format_double(r.lambda_e) << ',' << to_string(r.mode) << ',' << to_string(r.method)
        << ',' << format_double(r.scp) << ','
        << (r.ci_halfwidth ? format_double(*r.ci_halfwidth) : std::string()) << '\n';
  }
}

RouteReport run_route(const ScenarioConfig& cfg) {
  RouteReport report;
  if (cfg.has_random_placement()) {
    report.nodes = random_placement(*cfg.num_nodes, cfg.square_side, cfg.seed, 0);
  } else {
    for (const NodeSpec& n : cfg.nodes) report.nodes.push_back(n.position);
  }
  SECROUTE_REQUIRE(!report.nodes.empty(), ErrorKind::InvalidArgument,
                   "route needs node entries or num_nodes");
  std::vector<double> powers;
  for (std::size_t i = 0; i < report.nodes.size(); ++i) {
    powers.push_back(i < cfg.nodes.size() ? cfg.nodes[i].power.value_or(cfg.power) : cfg.power);
  }
  const NetworkModel model(report.nodes, powers, cfg.alpha, 0.0);
  const std::size_t n = model.size();
  report.src = cfg.src.value_or(0);
  report.dst = cfg.dst.value_or(n - 1);
  ExactCache cache(model, cfg.quadrature);
  const WeightedGraph graph(model, cfg.connectivity_radius);

  const bool metric_bench =
      cfg.benchmark == BenchmarkSelection::Metric || cfg.benchmark == BenchmarkSelection::Both;
  const bool exact_bench =
      cfg.benchmark == BenchmarkSelection::Exact || cfg.benchmark == BenchmarkSelection::Both;
  if (metric_bench && n > cfg.exhaustive_metric_max) {
    report.notes.push_back("benchmark_metric skipped: " + std::to_string(n) +
                           " nodes exceed exhaustive_metric_max = " +
                           std::to_string(cfg.exhaustive_metric_max));
  }
  if (exact_bench && n > cfg.exhaustive_exact_max) {
    report.notes.push_back("benchmark_exact skipped: " + std::to_string(n) +
                           " nodes exceed exhaustive_exact_max = " +
                           std::to_string(cfg.exhaustive_exact_max));
  }

  for (EavesdropperMode mode : modes_of(cfg.mode)) {
    const RouteResult proposed = route(model, report.src, report.dst, mode, cfg.connectivity_radius);
    report.proposed.push_back(proposed);
    auto metric_at = [&](const Path& p, double lambda) {
      const double w = path_weight(graph, p);
      return mode == EavesdropperMode::Colluding
                 ? colluding_metric(w, p.hops(), cfg.alpha, lambda)
                 : noncolluding_metric(w, p.hops(), cfg.alpha);
    };

    std::optional<Path> by_metric;
    if (metric_bench && n <= cfg.exhaustive_metric_max) {
      by_metric = exhaustive_route(
          model, report.src, report.dst, [&](const Path& p) { return metric_at(p, 1.0); },
          cfg.exhaustive_metric_max);
    }
    std::optional<Path> exact_colluding;
    if (exact_bench && n <= cfg.exhaustive_exact_max && mode == EavesdropperMode::Colluding) {
      exact_colluding = best_exact_colluding_route(model, report.src, report.dst, cfg.quadrature,
                                                   cfg.exhaustive_exact_max, true, proposed.path)
                            .path;
    }
    for (double lambda : cfg.lambda_e) {
      auto add = [&](const char* algorithm, const Path& p) {
        report.rows.push_back(RouteRecord{lambda, mode, algorithm, p, metric_at(p, lambda),
                                          cache.scp(p, mode, lambda)});
      };
      add("proposed", proposed.path);
      if (by_metric) add("benchmark_metric", *by_metric);
      if (exact_bench && n <= cfg.exhaustive_exact_max) {
        if (exact_colluding) {
          add("benchmark_exact", *exact_colluding);
        } else {
          // The non-colluding ranking depends on lambda; profiles are cached.
          add("benchmark_exact",
              exhaustive_route(
                  model, report.src, report.dst,
                  [&](const Path& p) { return -cache.scp(p, mode, lambda); },
                  cfg.exhaustive_exact_max));
        }
      }
    }
  }
  return report;
}

void write_route_csv(std::ostream& out, const RouteReport& report, const CsvMeta& meta) {
  write_meta(out, meta, "route/1");
  for (const std::string& n : report.notes) out << "# " << n << '\n';
  for (std::size_t i = 0; i < report.nodes.size(); ++i) {
    out << "# node " << i << ' ' << format_double(report.nodes[i].x) << ' '
        << format_double(report.nodes[i].y) << '\n';
  }
  out << "# src " << report.src << " dst " << report.dst << '\n';
  for (const RouteResult& r : report.proposed) {
    for (const HopBoundedEntry& e : r.table.entries) {
      out << "# table " << to_string(r.mode) << " v=" << e.max_hops << ' '
          << (e.path ? e.path->to_string() + " weight=" + format_double(e.weight_sum)
                     : std::string("none"))
          << '\n';
    }
  }
  out << "lambda_e,mode,algorithm,path,hops,metric,scp_exact\n";
  for (const RouteRecord& r : report.rows) {
    out << format_double(r.lambda_e) << ',' << to_string(r.mode) << ',' << r.algorithm << ','
        << r.path.to_string() << ',' << r.path.hops() << ',' << format_double(r.metric) << ','
        << format_double(r.scp_exact) << '\n';
  }
}

std::vector<RouteStudyRow> run_route_study(const ScenarioConfig& cfg) {
  SECROUTE_REQUIRE(cfg.mode != ModeSelection::NonColluding, ErrorKind::InvalidArgument,
                   "route-study compares against the exact colluding benchmark only");
  SECROUTE_REQUIRE(!cfg.num_nodes_list.empty(), ErrorKind::InvalidArgument,
                   "route-study needs num_nodes_list");
  std::vector<RouteStudyRow> rows;
  for (std::size_t nl : cfg.num_nodes_list) {
    if (nl > cfg.exhaustive_exact_max) {
      throw Error(ErrorKind::TooLarge, std::to_string(nl) + " nodes exceed exhaustive_exact_max = " +
                                           std::to_string(cfg.exhaustive_exact_max));
    }
    const auto t0 = Clock::now();
    std::vector<double> sum_prop(cfg.lambda_e.size(), 0.0), sum_best(cfg.lambda_e.size(), 0.0);
    std::size_t same = 0, evaluations = 0;
    for (std::size_t t = 0; t < cfg.study_trials; ++t) {
      const NetworkModel model = NetworkModel::uniform_power(
          random_placement(nl, cfg.square_side, cfg.seed, t), cfg.power, cfg.alpha, 0.0);
      const RouteResult proposed = route(model, 0, nl - 1, EavesdropperMode::Colluding);
      const ExactBenchmark best = best_exact_colluding_route(
          model, 0, nl - 1, cfg.quadrature, cfg.exhaustive_exact_max, true, proposed.path);
      evaluations += best.evaluations;
      const bool equal = best.path == proposed.path;
      same += equal;
      const double exposure =
          equal ? best.exposure : ColludingExposure(model, proposed.path, cfg.quadrature).integral();
      for (std::size_t li = 0; li < cfg.lambda_e.size(); ++li) {
        sum_prop[li] += std::exp(-cfg.lambda_e[li] * exposure);
        sum_best[li] += std::exp(-cfg.lambda_e[li] * best.exposure);
      }
    }
    const double wall = seconds_since(t0);
    const double n = static_cast<double>(cfg.study_trials);
    for (std::size_t li = 0; li < cfg.lambda_e.size(); ++li) {
      rows.push_back(RouteStudyRow{nl, cfg.study_trials, cfg.lambda_e[li], sum_prop[li] / n,
                                   sum_best[li] / n, static_cast<double>(same) / n, evaluations,
                                   wall});
    }
  }
  return rows;
}

void write_route_study_csv(std::ostream& out, const std::vector<RouteStudyRow>& rows,
                           const CsvMeta& meta) {
  write_meta(out, meta, "route-study/1");
  out << "num_nodes,trials,lambda_e,mean_scp_proposed,mean_scp_best,coincidence_rate,"
         "exact_evaluations\n";
  for (const RouteStudyRow& r : rows) {
    out << r.num_nodes << ',' << r.trials << ',' << format_double(r.lambda_e) << ','
        << format_double(r.mean_scp_proposed) << ',' << format_double(r.mean_scp_best) << ','
        << format_double(r.coincidence_rate) << ',' << r.exact_evaluations << '\n';
  }
}

std::vector<Lemma1Row> run_lemma1_check(std::uint64_t seed, std::size_t instances) {
  std::vector<Lemma1Row> rows;
  for (std::size_t i = 0; i < instances; ++i) {
    RandomStream rng{seed, kLemmaTag, i};
    const std::size_t n = 1 + static_cast<std::size_t>(5.0 * rng.uniform());
    Lemma1Row row;
    row.instance = i;
    for (std::size_t k = 0; k < n; ++k) {
      row.anchors.push_back(-10.0 + 20.0 * rng.uniform());
      row.scales.push_back(100.0 * rng.uniform());
    }
    std::tie(row.f, row.g) = lemma1_integrals(row.anchors, row.scales);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_lemma1_csv(std::ostream& out, const std::vector<Lemma1Row>& rows, const CsvMeta& meta) {
  write_meta(out, meta, "lemma1-check/1");
  out << "instance,n,f_n,g_n,difference\n";
  for (const Lemma1Row& r : rows) {
    out << r.instance << ',' << r.anchors.size() << ',' << format_double(r.f) << ','
        << format_double(r.g) << ',' << format_double(r.f - r.g) << '\n';
  }
}

}  // namespace secroute
