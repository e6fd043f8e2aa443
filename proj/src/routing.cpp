// SPDX-License-Identifier: Apache-2.0
#include "secroute/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "secroute/error.hpp"
#include "secroute/scp_analytic.hpp"
#include "secroute/scp_approx.hpp"

namespace secroute {

namespace {

// Relative slack on the branch-and-bound test, well above quadrature error.
constexpr double kPruneMargin = 1e-5;

void check_endpoints(std::size_t n, std::size_t src, std::size_t dst) {
  SECROUTE_REQUIRE(n >= 2, ErrorKind::InvalidArgument, "need at least two nodes");
  SECROUTE_REQUIRE(src < n && dst < n, ErrorKind::InvalidArgument, "endpoint out of range");
  SECROUTE_REQUIRE(src != dst, ErrorKind::InvalidArgument, "source equals destination");
}

// (value, hops, node sequence) ordering shared by every selection step.
bool better(double value, const std::vector<std::size_t>& path, double best_value,
            const std::vector<std::size_t>& best_path) {
  if (value != best_value) return value < best_value;
  if (path.size() != best_path.size()) return path.size() < best_path.size();
  return path < best_path;
}

struct Label {
  bool valid = false;
  double weight = 0.0;
  std::vector<std::size_t> path;
};

// Lexicographic comparison of (prefix + [last]) against other.
bool extended_less(const std::vector<std::size_t>& prefix, std::size_t last,
                   const std::vector<std::size_t>& other) {
  const std::size_t n = std::min(prefix.size(), other.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (prefix[i] != other[i]) return prefix[i] < other[i];
  }
  if (prefix.size() < other.size()) return last < other[prefix.size()];
  return false;
}

}  // namespace

WeightedGraph::WeightedGraph(const NetworkModel& model, std::optional<double> connectivity_radius)
    : n_(model.size()), w_(n_ * n_, -1.0) {
  SECROUTE_REQUIRE(!connectivity_radius || *connectivity_radius > 0.0, ErrorKind::InvalidArgument,
                   "connectivity radius must be > 0");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d2 = distance_sq(model.node(i), model.node(j));
      SECROUTE_REQUIRE(d2 > 0.0, ErrorKind::ZeroDistance,
                       "nodes " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      if (connectivity_radius && d2 > *connectivity_radius * *connectivity_radius) continue;
      w_[i * n_ + j] = w_[j * n_ + i] = pow_alpha_from_sq(d2, model.alpha());
    }
  }
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const {
  SECROUTE_REQUIRE(i < n_ && j < n_ && has_edge(i, j), ErrorKind::InvalidArgument,
                   "no edge between the given nodes");
  return w_[i * n_ + j];
}

HopBoundedTable hop_bounded_shortest_paths(const WeightedGraph& graph, std::size_t src,
                                           std::size_t dst) {
  const std::size_t n = graph.size();
  check_endpoints(n, src, dst);
  std::vector<Label> prev(n);
  prev[src] = Label{true, 0.0, {src}};

  HopBoundedTable table;
  for (std::size_t v = 1; v < n; ++v) {
    std::vector<Label> cur = prev;
    for (std::size_t u = 0; u < n; ++u) {
      if (u == src) continue;
      std::size_t pred = n;
      double best_w = cur[u].valid ? cur[u].weight : std::numeric_limits<double>::infinity();
      std::size_t best_hops = cur[u].valid ? cur[u].path.size() : n + 1;
      for (std::size_t x = 0; x < n; ++x) {
        if (!prev[x].valid || !graph.has_edge(x, u)) continue;
        const double w = prev[x].weight + graph.weight(x, u);
        const std::size_t hops = prev[x].path.size() + 1;
        bool take;
        if (w != best_w) {
          take = w < best_w;
        } else if (hops != best_hops) {
          take = hops < best_hops;
        } else if (pred < n) {
          // Both candidates end in u after equally long prefixes.
          take = prev[x].path < prev[pred].path;
        } else {
          take = extended_less(prev[x].path, u, cur[u].path);
        }
        if (take) {
          pred = x;
          best_w = w;
          best_hops = hops;
        }
      }
      if (pred < n) {
        cur[u].valid = true;
        cur[u].weight = best_w;
        cur[u].path = prev[pred].path;
        cur[u].path.push_back(u);
      }
    }
    HopBoundedEntry entry;
    entry.max_hops = v;
    if (cur[dst].valid) {
      entry.path = Path(cur[dst].path);
      entry.weight_sum = cur[dst].weight;
    }
    table.entries.push_back(std::move(entry));
    prev = std::move(cur);
  }
  return table;
}

double path_weight(const WeightedGraph& graph, const Path& path) {
  double w = 0.0;
  const auto& p = path.nodes();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) w += graph.weight(p[i], p[i + 1]);
  return w;
}

double colluding_metric(double weight_sum, std::size_t hops, double alpha, double lambda_e) {
  SECROUTE_REQUIRE(weight_sum > 0.0, ErrorKind::InvalidArgument, "weight sum must be > 0");
  return k2(hops, alpha, lambda_e) * std::pow(weight_sum, 2.0 / alpha);
}

double noncolluding_metric(double weight_sum, std::size_t hops, double alpha) {
  SECROUTE_REQUIRE(weight_sum > 0.0, ErrorKind::InvalidArgument, "weight sum must be > 0");
  SECROUTE_REQUIRE(hops >= 1, ErrorKind::InvalidArgument, "need at least one hop");
  SECROUTE_REQUIRE(alpha > 2.0, ErrorKind::AlphaOutOfRange, "alpha must be > 2");
  return std::pow(static_cast<double>(hops) * weight_sum, 2.0 / alpha);
}

double noncolluding_metric_general(const NetworkModel& model, const Path& path) {
  double power_sum = 0.0;
  for (std::size_t t : path.transmitters()) power_sum += model.power(t);
  return std::pow(power_sum * legit_min_snr_rate(model, path), 2.0 / model.alpha());
}

RouteResult route(const NetworkModel& model, std::size_t src, std::size_t dst,
                  EavesdropperMode mode, std::optional<double> connectivity_radius) {
  check_endpoints(model.size(), src, dst);
  SECROUTE_REQUIRE(model.has_equal_powers(), ErrorKind::UnequalPowers,
                   "routing assumes equal transmit powers");
  const WeightedGraph graph(model, connectivity_radius);
  HopBoundedTable table = hop_bounded_shortest_paths(graph, src, dst);

  // Scores use lambda = 1 so the argmin cannot depend on lambda through rounding.
  auto score = [&](const HopBoundedEntry& e) {
    return mode == EavesdropperMode::Colluding
               ? colluding_metric(e.weight_sum, e.path->hops(), model.alpha(), 1.0)
               : noncolluding_metric(e.weight_sum, e.path->hops(), model.alpha());
  };
  const HopBoundedEntry* best = nullptr;
  double best_score = 0.0;
  for (const HopBoundedEntry& e : table.entries) {
    if (!e.path) continue;
    const double s = score(e);
    if (!best || better(s, e.path->nodes(), best_score, best->path->nodes())) {
      best = &e;
      best_score = s;
    }
  }
  SECROUTE_REQUIRE(best != nullptr, ErrorKind::InvalidArgument,
                   "destination unreachable from source");
  const double value =
      mode == EavesdropperMode::Colluding
          ? colluding_metric(best->weight_sum, best->path->hops(), model.alpha(), model.lambda_e())
          : noncolluding_metric(best->weight_sum, best->path->hops(), model.alpha());
  Path chosen = *best->path;
  return RouteResult{std::move(chosen), value, mode, std::move(table)};
}

Path exhaustive_route(const NetworkModel& model, std::size_t src, std::size_t dst,
                      const PathObjective& objective, std::size_t max_nodes_guard) {
  check_endpoints(model.size(), src, dst);
  if (model.size() > max_nodes_guard) {
    throw Error(ErrorKind::TooLarge, std::to_string(model.size()) + " nodes exceed the guard of " +
                                         std::to_string(max_nodes_guard));
  }
  const std::size_t n = model.size();
  std::vector<std::size_t> path{src};
  std::vector<bool> used(n, false);
  used[src] = true;
  std::vector<std::size_t> best_path;
  double best_value = std::numeric_limits<double>::infinity();

  // Neighbours are visited in ascending order, so paths arrive in
  // lexicographic order and the first of equal (value, hops) wins.
  auto dfs = [&](auto&& self, std::size_t u) -> void {
    for (std::size_t x = 0; x < n; ++x) {
      if (used[x]) continue;
      path.push_back(x);
      if (x == dst) {
        const double v = objective(Path(path));
        if (best_path.empty() || v < best_value ||
            (v == best_value && path.size() < best_path.size())) {
          best_value = v;
          best_path = path;
        }
      } else {
        used[x] = true;
        self(self, x);
        used[x] = false;
      }
      path.pop_back();
    }
    (void)u;
  };
  dfs(dfs, src);
  return Path(best_path);
}

ExactBenchmark best_exact_colluding_route(const NetworkModel& model, std::size_t src,
                                          std::size_t dst, const QuadratureConfig& quad,
                                          std::size_t max_nodes_guard, bool prune,
                                          std::optional<Path> incumbent) {
  check_endpoints(model.size(), src, dst);
  if (model.size() > max_nodes_guard) {
    throw Error(ErrorKind::TooLarge, std::to_string(model.size()) + " nodes exceed the guard of " +
                                         std::to_string(max_nodes_guard));
  }
  SECROUTE_REQUIRE(model.has_equal_powers(), ErrorKind::UnequalPowers,
                   "the pruning bound assumes equal transmit powers");
  const std::size_t n = model.size();
  const WeightedGraph graph(model);
  const double alpha = model.alpha();

  // Lightest remaining weight to the destination (Dijkstra on the dense graph).
  std::vector<double> rest(n, std::numeric_limits<double>::infinity());
  std::vector<bool> done(n, false);
  rest[dst] = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && (u == n || rest[i] < rest[u])) u = i;
    }
    done[u] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i]) rest[i] = std::min(rest[i], rest[u] + graph.weight(u, i));
    }
  }
  std::vector<double> k(n + 1, 0.0);
  for (std::size_t h = 1; h <= n; ++h) k[h] = k2(h, alpha, 1.0);

  ExactBenchmark out{Path({src, dst}), std::numeric_limits<double>::infinity(), 0};
  std::vector<std::size_t> best_path;
  auto consider = [&](const std::vector<std::size_t>& nodes) {
    const double value = ColludingExposure(model, Path(nodes), quad).integral();
    ++out.evaluations;
    if (best_path.empty() || better(value, nodes, out.exposure, best_path)) {
      out.exposure = value;
      best_path = nodes;
    }
  };
  if (incumbent) {
    SECROUTE_REQUIRE(incumbent->source() == src && incumbent->destination() == dst,
                     ErrorKind::InvalidArgument, "incumbent has the wrong endpoints");
    incumbent->check_against(model);
    consider(incumbent->nodes());
  }
  auto pruned = [&](double bound) {
    return prune && bound > out.exposure * (1.0 + kPruneMargin);
  };

  std::vector<std::size_t> path{src};
  std::vector<bool> used(n, false);
  used[src] = true;
  auto dfs = [&](auto&& self, std::size_t u, double w) -> void {
    for (std::size_t x = 0; x < n; ++x) {
      if (used[x]) continue;
      const double w2 = w + graph.weight(u, x);
      const std::size_t hops = path.size();
      path.push_back(x);
      if (x == dst) {
        if (!pruned(k[hops] * std::pow(w2, 2.0 / alpha)) &&
            !(incumbent && incumbent->nodes() == path)) {
          consider(path);
        }
      } else if (!pruned(k[hops + 1] * std::pow(w2 + rest[x], 2.0 / alpha))) {
        used[x] = true;
        self(self, x, w2);
        used[x] = false;
      }
      path.pop_back();
    }
  };
  dfs(dfs, src, 0.0);
  out.path = Path(best_path);
  return out;
}

}  // namespace secroute
