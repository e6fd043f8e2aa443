// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: one `key = value` per line, `#` starts a comment.
//
//   alpha = 4
//   lambda_e = 1e-6, 1e-5, 1e-4
//   node = -10, 0          # repeated; optional third field is the power
//   path = 0, 2, 4
//
// See README.md for the full key list. Unknown keys are rejected and every
// error names the offending line.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "secroute/model.hpp"
#include "secroute/quadrature.hpp"

namespace secroute {

enum class ModeSelection { Colluding, NonColluding, Both };
enum class MethodSelection { MonteCarlo, Exact, Approx, All };
enum class BenchmarkSelection { None, Metric, Exact, Both };

ModeSelection parse_mode_selection(const std::string& text);
MethodSelection parse_method_selection(const std::string& text);

struct NodeSpec final {
  Vec2 position;
  std::optional<double> power;
};

struct ScenarioConfig final {
  double alpha = 4.0;
  std::vector<double> lambda_e;
  double power = 1.0;

  // Explicit network...
  std::vector<NodeSpec> nodes;
  // ...or a uniform random placement with pinned corners.
  std::optional<std::size_t> num_nodes;
  double square_side = 50.0;

  std::optional<std::vector<std::size_t>> path;
  std::optional<std::size_t> src, dst;
  std::optional<double> connectivity_radius;

  ModeSelection mode = ModeSelection::Both;
  MethodSelection method = MethodSelection::All;
  BenchmarkSelection benchmark = BenchmarkSelection::Metric;

  std::size_t mc_trials = 10000;
  std::uint64_t seed = 1;
  std::optional<double> window_half_width;  // empty means auto
  unsigned workers = 1;
  double confidence_level = 0.95;

  std::vector<std::size_t> num_nodes_list;
  std::size_t study_trials = 200;
  std::size_t exhaustive_metric_max = 12;
  std::size_t exhaustive_exact_max = 10;

  QuadratureConfig quadrature;
  std::string out;

  bool has_random_placement() const noexcept { return num_nodes.has_value(); }
  // Explicit networks only.
  NetworkModel network(double lambda_e) const;
};

ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig parse_scenario_file(const std::string& path);

// Source at (0, 0), destination (last index) at (side, side), the rest
// uniform in the square. A pure function of (seed, num_nodes, trial).
std::vector<Vec2> random_placement(std::size_t num_nodes, double side, std::uint64_t seed,
                                   std::uint64_t trial);

}  // namespace secroute
