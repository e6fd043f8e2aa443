// SPDX-License-Identifier: Apache-2.0
#include "secroute/model.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "secroute/error.hpp"

namespace secroute {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroDistance: return "ZeroDistance";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorKind::NumericallyDegenerateRates: return "NumericallyDegenerateRates";
    case ErrorKind::DegenerateWindow: return "DegenerateWindow";
    case ErrorKind::UnequalPowers: return "UnequalPowers";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

const char* to_string(EavesdropperMode mode) noexcept {
  return mode == EavesdropperMode::Colluding ? "colluding" : "noncolluding";
}

const char* to_string(ScpMethod method) noexcept {
  switch (method) {
    case ScpMethod::MonteCarlo: return "mc";
    case ScpMethod::Exact: return "exact";
    case ScpMethod::Approx: return "approx";
  }
  return "unknown";
}

NetworkModel::NetworkModel(std::vector<Vec2> nodes, std::vector<double> powers, double alpha,
                           double lambda_e)
    : nodes_(std::move(nodes)), powers_(std::move(powers)), alpha_(alpha), lambda_e_(lambda_e) {
  SECROUTE_REQUIRE(std::isfinite(alpha_) && alpha_ > 2.0, ErrorKind::AlphaOutOfRange,
                   "path-loss exponent must be > 2, got " + std::to_string(alpha_));
  SECROUTE_REQUIRE(std::isfinite(lambda_e_) && lambda_e_ >= 0.0, ErrorKind::InvalidArgument,
                   "eavesdropper density must be finite and >= 0");
  SECROUTE_REQUIRE(nodes_.size() == powers_.size(), ErrorKind::InvalidArgument,
                   "one power per node required");
  for (const Vec2& n : nodes_) {
    SECROUTE_REQUIRE(std::isfinite(n.x) && std::isfinite(n.y), ErrorKind::InvalidArgument,
                     "node coordinates must be finite");
  }
  for (double p : powers_) {
    SECROUTE_REQUIRE(std::isfinite(p) && p > 0.0, ErrorKind::InvalidArgument,
                     "transmit powers must be > 0");
  }
}

NetworkModel NetworkModel::uniform_power(std::vector<Vec2> nodes, double power, double alpha,
                                         double lambda_e) {
  std::vector<double> powers(nodes.size(), power);
  return NetworkModel(std::move(nodes), std::move(powers), alpha, lambda_e);
}

NetworkModel NetworkModel::with_lambda(double lambda_e) const {
  return NetworkModel(nodes_, powers_, alpha_, lambda_e);
}

bool NetworkModel::has_equal_powers(double rel_tol) const noexcept {
  if (powers_.empty()) return true;
  const double p0 = powers_.front();
  return std::all_of(powers_.begin(), powers_.end(),
                     [&](double p) { return std::abs(p - p0) <= rel_tol * p0; });
}

Path::Path(std::vector<std::size_t> node_indices) : nodes_(std::move(node_indices)) {
  SECROUTE_REQUIRE(nodes_.size() >= 2, ErrorKind::InvalidArgument,
                   "a path needs at least two nodes");
  std::unordered_set<std::size_t> seen;
  for (std::size_t n : nodes_) {
    SECROUTE_REQUIRE(seen.insert(n).second, ErrorKind::InvalidArgument,
                     "path revisits node " + std::to_string(n));
  }
}

void Path::check_against(const NetworkModel& model) const {
  for (std::size_t n : nodes_) {
    SECROUTE_REQUIRE(n < model.size(), ErrorKind::InvalidArgument,
                     "path node " + std::to_string(n) + " out of range");
  }
}

std::string Path::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) os << '-';
    os << nodes_[i];
  }
  return os.str();
}

ScpEstimate ScpEstimate::exact(double v) { return {v, ScpMethod::Exact, std::nullopt, std::nullopt}; }

ScpEstimate ScpEstimate::approx(double v) {
  return {v, ScpMethod::Approx, std::nullopt, std::nullopt};
}

ScpEstimate ScpEstimate::monte_carlo(double v, double ci, std::size_t trials) {
  return {v, ScpMethod::MonteCarlo, ci, trials};
}

std::vector<double> hop_distances(const NetworkModel& model, const Path& path) {
  path.check_against(model);
  std::vector<double> d;
  d.reserve(path.hops());
  const auto& idx = path.nodes();
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    const double di = distance(model.node(idx[i]), model.node(idx[i + 1]));
    SECROUTE_REQUIRE(di > 0.0, ErrorKind::ZeroDistance,
                     "nodes " + std::to_string(idx[i]) + " and " + std::to_string(idx[i + 1]) +
                         " are co-located");
    d.push_back(di);
  }
  return d;
}

double link_weight(const NetworkModel& model, std::size_t i, std::size_t j) {
  return pow_alpha_from_sq(distance_sq(model.node(i), model.node(j)), model.alpha());
}

double legit_min_snr_rate(const NetworkModel& model, const Path& path) {
  hop_distances(model, path);  // validates indices and co-location
  const auto& idx = path.nodes();
  double rate = 0.0;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    rate += link_weight(model, idx[i], idx[i + 1]) / model.power(idx[i]);
  }
  return rate;
}

}  // namespace secroute
