// SPDX-License-Identifier: Apache-2.0
//
// Experiment drivers behind the command-line tool. Each run_* function is
// deterministic in its config; the write_* functions emit CSV with `#`
// metadata lines. Wall time is kept on the records for logging but never
// written to CSV, so output files are byte-reproducible.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secroute/model.hpp"
#include "secroute/routing.hpp"
#include "secroute/scenario.hpp"

namespace secroute {

inline constexpr const char* kToolVersion = "secroute 1.0.0";

std::string fnv1a_hex(std::string_view bytes);

// Shortest round-trip decimal form.
std::string format_double(double v);

struct CsvMeta final {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<std::string> notes;
};

struct ExperimentRecord final {
  std::string scenario_id;
  double lambda_e = 0.0;
  ScpMethod method = ScpMethod::Exact;
  EavesdropperMode mode = EavesdropperMode::Colluding;
  Path path;
  double scp = 1.0;
  std::optional<double> ci_halfwidth;
  double wall_seconds = 0.0;
};

std::vector<ExperimentRecord> run_scp_eval(const ScenarioConfig& cfg);
void write_scp_eval_csv(std::ostream& out, const std::vector<ExperimentRecord>& rows,
                        const CsvMeta& meta);

struct RouteRecord final {
  double lambda_e = 0.0;
  EavesdropperMode mode = EavesdropperMode::Colluding;
  std::string algorithm;  // proposed, benchmark_metric, benchmark_exact
  Path path;
  double metric = 0.0;
  double scp_exact = 1.0;
};

struct RouteReport final {
  std::vector<Vec2> nodes;
  std::size_t src = 0, dst = 0;
  std::vector<RouteResult> proposed;  // one per selected mode
  std::vector<RouteRecord> rows;
  std::vector<std::string> notes;
};

RouteReport run_route(const ScenarioConfig& cfg);
void write_route_csv(std::ostream& out, const RouteReport& report, const CsvMeta& meta);

struct RouteStudyRow final {
  std::size_t num_nodes = 0;
  std::size_t trials = 0;
  double lambda_e = 0.0;
  double mean_scp_proposed = 0.0;
  double mean_scp_best = 0.0;
  double coincidence_rate = 0.0;
  std::size_t exact_evaluations = 0;
  double wall_seconds = 0.0;
};

// Colluding case only: proposed route against the best exact-SCP route.
std::vector<RouteStudyRow> run_route_study(const ScenarioConfig& cfg);
void write_route_study_csv(std::ostream& out, const std::vector<RouteStudyRow>& rows,
                           const CsvMeta& meta);

struct Lemma1Row final {
  std::size_t instance = 0;
  std::vector<double> anchors, scales;
  double f = 0.0, g = 0.0;
};

// Random instances with n in 1..5, a_k in [-10, 10], B_k in [0, 100].
std::vector<Lemma1Row> run_lemma1_check(std::uint64_t seed, std::size_t instances);
void write_lemma1_csv(std::ostream& out, const std::vector<Lemma1Row>& rows, const CsvMeta& meta);

}  // namespace secroute
