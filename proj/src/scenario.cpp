// SPDX-License-Identifier: Apache-2.0
#include "secroute/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "secroute/error.hpp"
#include "secroute/rng.hpp"

namespace secroute {

namespace {

constexpr std::uint64_t kPlacementTag = 0x706c6163656d656eULL;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

class LineError {
 public:
  explicit LineError(std::size_t line) : line_(line) {}
  [[noreturn]] void fail(const std::string& msg, ErrorKind kind = ErrorKind::Parse) const {
    throw Error(kind, "line " + std::to_string(line_) + ": " + msg);
  }

 private:
  std::size_t line_;
};

double to_double(const std::string& s, const LineError& at) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    at.fail("expected a number, got '" + s + "'");
  }
  return v;
}

std::uint64_t to_uint(const std::string& s, const LineError& at) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
    at.fail("expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

std::size_t to_count(const std::string& s, const LineError& at) {
  const std::uint64_t v = to_uint(s, at);
  if (v == 0) at.fail("expected a positive integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

double to_positive(const std::string& s, const LineError& at) {
  const double v = to_double(s, at);
  if (v <= 0.0) at.fail("expected a positive number, got '" + s + "'");
  return v;
}

}  // namespace

ModeSelection parse_mode_selection(const std::string& text) {
  if (text == "colluding") return ModeSelection::Colluding;
  if (text == "noncolluding") return ModeSelection::NonColluding;
  if (text == "both") return ModeSelection::Both;
  throw Error(ErrorKind::Parse, "unknown mode '" + text + "'");
}

MethodSelection parse_method_selection(const std::string& text) {
  if (text == "mc") return MethodSelection::MonteCarlo;
  if (text == "exact") return MethodSelection::Exact;
  if (text == "approx") return MethodSelection::Approx;
  if (text == "all") return MethodSelection::All;
  throw Error(ErrorKind::Parse, "unknown method '" + text + "'");
}

NetworkModel ScenarioConfig::network(double lambda) const {
  SECROUTE_REQUIRE(!nodes.empty(), ErrorKind::InvalidArgument, "scenario has no explicit nodes");
  std::vector<Vec2> pos;
  std::vector<double> pw;
  for (const NodeSpec& n : nodes) {
    pos.push_back(n.position);
    pw.push_back(n.power.value_or(power));
  }
  return NetworkModel(std::move(pos), std::move(pw), alpha, lambda);
}

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  bool have_alpha = false;
  std::string raw;
  std::size_t line_no = 0;

  using Handler = std::function<void(const std::string&, const LineError&)>;
  const std::map<std::string, Handler> handlers{
      {"alpha",
       [&](const std::string& v, const LineError& at) {
         cfg.alpha = to_double(v, at);
         if (cfg.alpha <= 2.0) at.fail("alpha must be > 2", ErrorKind::AlphaOutOfRange);
         have_alpha = true;
       }},
      {"lambda_e",
       [&](const std::string& v, const LineError& at) {
         for (const std::string& s : split_list(v)) {
           const double l = to_double(s, at);
           if (l < 0.0) at.fail("lambda_e values must be >= 0");
           cfg.lambda_e.push_back(l);
         }
       }},
      {"power", [&](const std::string& v, const LineError& at) { cfg.power = to_positive(v, at); }},
      {"node",
       [&](const std::string& v, const LineError& at) {
         const auto f = split_list(v);
         if (f.size() != 2 && f.size() != 3) at.fail("node takes 'x, y' or 'x, y, power'");
         NodeSpec n{{to_double(f[0], at), to_double(f[1], at)}, std::nullopt};
         if (f.size() == 3) n.power = to_positive(f[2], at);
         cfg.nodes.push_back(n);
       }},
      {"num_nodes",
       [&](const std::string& v, const LineError& at) {
         cfg.num_nodes = to_count(v, at);
         if (*cfg.num_nodes < 2) at.fail("num_nodes must be >= 2");
       }},
      {"square_side",
       [&](const std::string& v, const LineError& at) { cfg.square_side = to_positive(v, at); }},
      {"path",
       [&](const std::string& v, const LineError& at) {
         std::vector<std::size_t> p;
         for (const std::string& s : split_list(v)) p.push_back(to_uint(s, at));
         if (p.size() < 2) at.fail("path needs at least two nodes");
         cfg.path = p;
       }},
      {"src", [&](const std::string& v, const LineError& at) { cfg.src = to_uint(v, at); }},
      {"dst", [&](const std::string& v, const LineError& at) { cfg.dst = to_uint(v, at); }},
      {"connectivity_radius",
       [&](const std::string& v, const LineError& at) {
         cfg.connectivity_radius = to_positive(v, at);
       }},
      {"mode",
       [&](const std::string& v, const LineError& at) {
         try {
           cfg.mode = parse_mode_selection(v);
         } catch (const Error& e) {
           at.fail(e.what());
         }
       }},
      {"method",
       [&](const std::string& v, const LineError& at) {
         try {
           cfg.method = parse_method_selection(v);
         } catch (const Error& e) {
           at.fail(e.what());
         }
       }},
      {"benchmark",
       [&](const std::string& v, const LineError& at) {
         if (v == "none") cfg.benchmark = BenchmarkSelection::None;
         else if (v == "metric") cfg.benchmark = BenchmarkSelection::Metric;
         else if (v == "exact") cfg.benchmark = BenchmarkSelection::Exact;
         else if (v == "both") cfg.benchmark = BenchmarkSelection::Both;
         else at.fail("benchmark must be none, metric, exact or both");
       }},
      {"mc_trials", [&](const std::string& v, const LineError& at) { cfg.mc_trials = to_count(v, at); }},
      {"seed", [&](const std::string& v, const LineError& at) { cfg.seed = to_uint(v, at); }},
      {"window",
       [&](const std::string& v, const LineError& at) {
         if (v == "auto") cfg.window_half_width.reset();
         else cfg.window_half_width = to_positive(v, at);
       }},
      {"workers",
       [&](const std::string& v, const LineError& at) {
         cfg.workers = static_cast<unsigned>(to_count(v, at));
       }},
      {"confidence_level",
       [&](const std::string& v, const LineError& at) {
         cfg.confidence_level = to_double(v, at);
         if (!(cfg.confidence_level > 0.0 && cfg.confidence_level < 1.0)) {
           at.fail("confidence_level must lie in (0, 1)");
         }
       }},
      {"num_nodes_list",
       [&](const std::string& v, const LineError& at) {
         for (const std::string& s : split_list(v)) {
           const std::size_t n = to_count(s, at);
           if (n < 2) at.fail("num_nodes_list values must be >= 2");
           cfg.num_nodes_list.push_back(n);
         }
       }},
      {"study_trials",
       [&](const std::string& v, const LineError& at) { cfg.study_trials = to_count(v, at); }},
      {"exhaustive_metric_max",
       [&](const std::string& v, const LineError& at) { cfg.exhaustive_metric_max = to_count(v, at); }},
      {"exhaustive_exact_max",
       [&](const std::string& v, const LineError& at) { cfg.exhaustive_exact_max = to_count(v, at); }},
      {"rel_tol",
       [&](const std::string& v, const LineError& at) { cfg.quadrature.rel_tol = to_positive(v, at); }},
      {"abs_tol",
       [&](const std::string& v, const LineError& at) { cfg.quadrature.abs_tol = to_positive(v, at); }},
      {"max_subdivisions",
       [&](const std::string& v, const LineError& at) {
         cfg.quadrature.max_subdivisions = to_count(v, at);
       }},
      {"fading_quadrature_order",
       [&](const std::string& v, const LineError& at) {
         cfg.quadrature.fading_quadrature_order = to_count(v, at);
         if (cfg.quadrature.fading_quadrature_order < 8) at.fail("fading_quadrature_order must be >= 8");
       }},
      {"out", [&](const std::string& v, const LineError&) { cfg.out = v; }},
  };
  const std::set<std::string> repeatable{"node"};

  while (std::getline(in, raw)) {
    ++line_no;
    const LineError at(line_no);
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) at.fail("expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto h = handlers.find(key);
    if (h == handlers.end()) at.fail("unknown key '" + key + "'");
    if (!repeatable.count(key) && !seen.insert(key).second) at.fail("duplicate key '" + key + "'");
    if (value.empty()) at.fail("missing value for '" + key + "'");
    h->second(value, at);
  }

  auto invalid = [](const std::string& msg) { throw Error(ErrorKind::Parse, msg); };
  if (!have_alpha) invalid("missing required key 'alpha'");
  if (cfg.lambda_e.empty()) invalid("missing required key 'lambda_e'");
  if (!cfg.nodes.empty() && cfg.num_nodes) invalid("give either node entries or num_nodes, not both");
  if (!cfg.nodes.empty() && cfg.nodes.size() < 2) invalid("need at least two nodes");
  const std::size_t n = cfg.nodes.empty() ? cfg.num_nodes.value_or(0) : cfg.nodes.size();
  auto check_index = [&](std::size_t i, const char* what) {
    if (n > 0 && i >= n) invalid(std::string(what) + " index " + std::to_string(i) + " out of range");
  };
  if (cfg.path) {
    for (std::size_t i : *cfg.path) check_index(i, "path");
  }
  if (cfg.src) check_index(*cfg.src, "src");
  if (cfg.dst) check_index(*cfg.dst, "dst");
  if (!cfg.nodes.empty()) cfg.network(cfg.lambda_e.front());  // validates geometry and powers
  return cfg;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  SECROUTE_REQUIRE(in.good(), ErrorKind::Parse, "cannot read config file '" + path + "'");
  return parse_scenario(in);
}

std::vector<Vec2> random_placement(std::size_t num_nodes, double side, std::uint64_t seed,
                                   std::uint64_t trial) {
  SECROUTE_REQUIRE(num_nodes >= 2, ErrorKind::InvalidArgument, "need at least two nodes");
  SECROUTE_REQUIRE(side > 0.0, ErrorKind::InvalidArgument, "square side must be > 0");
  RandomStream rng{seed, kPlacementTag, num_nodes, trial};
  std::vector<Vec2> nodes{{0.0, 0.0}};
  for (std::size_t i = 0; i + 2 < num_nodes; ++i) {
    const double x = side * rng.uniform();
    const double y = side * rng.uniform();
    nodes.push_back({x, y});
  }
  nodes.push_back({side, side});
  return nodes;
}

}  // namespace secroute
