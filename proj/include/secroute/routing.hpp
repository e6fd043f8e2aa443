// SPDX-License-Identifier: Apache-2.0
//
// Highest-SCP routing with equal transmit powers.
//
// Both SCP approximations depend on a path only through its hop count h and
// weight W = sum d^alpha, and are decreasing in both. Bellman-Ford round v
// gives the lightest path with at most v hops; scanning those candidates and
// keeping the one with the best metric is therefore optimal over all simple
// paths. Ties are broken by fewer hops, then by lexicographic node sequence.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "secroute/model.hpp"
#include "secroute/quadrature.hpp"

namespace secroute {

class WeightedGraph final {
 public:
  // Complete graph with w_ij = d_ij^alpha, or only edges of length <= radius.
  explicit WeightedGraph(const NetworkModel& model,
                         std::optional<double> connectivity_radius = std::nullopt);

  std::size_t size() const noexcept { return n_; }
  bool has_edge(std::size_t i, std::size_t j) const { return i != j && w_[i * n_ + j] >= 0.0; }
  double weight(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
  std::vector<double> w_;  // negative marks a missing edge
};

struct HopBoundedEntry final {
  std::size_t max_hops = 0;
  std::optional<Path> path;  // empty when no path fits in max_hops hops
  double weight_sum = 0.0;
};

struct HopBoundedTable final {
  std::vector<HopBoundedEntry> entries;  // entries[v - 1] for v = 1..N_L-1
};

HopBoundedTable hop_bounded_shortest_paths(const WeightedGraph& graph, std::size_t src,
                                           std::size_t dst);

// Weight sum of a path accumulated from the source, as Bellman-Ford does.
double path_weight(const WeightedGraph& graph, const Path& path);

// K2(h) W^{2/alpha}.
double colluding_metric(double weight_sum, std::size_t hops, double alpha, double lambda_e);

// (h W)^{2/alpha}.
double noncolluding_metric(double weight_sum, std::size_t hops, double alpha);

// (sum p * sum d^alpha / p)^{2/alpha}, the non-colluding metric for any powers.
double noncolluding_metric_general(const NetworkModel& model, const Path& path);

struct RouteResult final {
  Path path;
  double metric_value = 0.0;
  EavesdropperMode mode = EavesdropperMode::Colluding;
  HopBoundedTable table;
};

// Throws UnequalPowers unless all transmit powers match.
RouteResult route(const NetworkModel& model, std::size_t src, std::size_t dst,
                  EavesdropperMode mode,
                  std::optional<double> connectivity_radius = std::nullopt);

using PathObjective = std::function<double(const Path&)>;

// Minimises the objective over every simple src -> dst path. Throws TooLarge
// when the model has more than max_nodes_guard nodes.
Path exhaustive_route(const NetworkModel& model, std::size_t src, std::size_t dst,
                      const PathObjective& objective, std::size_t max_nodes_guard = 12);

struct ExactBenchmark final {
  Path path;
  double exposure = 0.0;  // colluding exposure integral I of the path
  std::size_t evaluations = 0;
};

// Path with the highest exact colluding SCP (smallest exposure integral; the
// ranking does not depend on lambda). Branch and bound: a partial path with h
// hops and weight W cannot finish below K2(h + 1) (W + w_rest)^{2/alpha},
// where w_rest is the lightest remaining weight to the destination, because
// the anchored approximation never exceeds the exact exposure. With
// prune = false every simple path is evaluated. Requires equal powers.
ExactBenchmark best_exact_colluding_route(const NetworkModel& model, std::size_t src,
                                          std::size_t dst, const QuadratureConfig& quad = {},
                                          std::size_t max_nodes_guard = 10, bool prune = true,
                                          std::optional<Path> incumbent = std::nullopt);

}  // namespace secroute
