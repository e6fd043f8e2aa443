// SPDX-License-Identifier: Apache-2.0
//
// Domain types shared by every SCP engine: node geometry, transmit powers,
// path-loss exponent and eavesdropper density, plus the two quantities every
// engine starts from (hop distances and the bottleneck-SNR rate).
//
// Noise power is normalised to 1, so a "power" is a transmit-power-to-noise
// ratio and SNR = p |h|^2 / d^alpha.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace secroute {

struct Vec2 final {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance_sq(Vec2 a, Vec2 b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Vec2 a, Vec2 b) noexcept { return std::sqrt(distance_sq(a, b)); }

// d^alpha from a squared distance, with the common alpha = 4 case kept exact.
inline double pow_alpha_from_sq(double d2, double alpha) noexcept {
  if (alpha == 4.0) return d2 * d2;
  return std::pow(d2, 0.5 * alpha);
}

enum class EavesdropperMode { Colluding, NonColluding };

const char* to_string(EavesdropperMode mode) noexcept;

// Immutable network description. Construction validates every invariant.
class NetworkModel final {
 public:
  NetworkModel(std::vector<Vec2> nodes, std::vector<double> powers, double alpha, double lambda_e);

  // All nodes share one transmit power.
  static NetworkModel uniform_power(std::vector<Vec2> nodes, double power, double alpha,
                                    double lambda_e);

  const std::vector<Vec2>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& powers() const noexcept { return powers_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  Vec2 node(std::size_t i) const { return nodes_.at(i); }
  double power(std::size_t i) const { return powers_.at(i); }
  double alpha() const noexcept { return alpha_; }
  double lambda_e() const noexcept { return lambda_e_; }

  NetworkModel with_lambda(double lambda_e) const;

  // True when every power equals the first within relative tolerance.
  bool has_equal_powers(double rel_tol = 1e-12) const noexcept;

 private:
  std::vector<Vec2> nodes_;
  std::vector<double> powers_;
  double alpha_;
  double lambda_e_;
};

// Ordered, simple sequence of node indices (source first). At least one hop.
class Path final {
 public:
  explicit Path(std::vector<std::size_t> node_indices);

  const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }
  std::size_t hops() const noexcept { return nodes_.size() - 1; }
  std::size_t source() const noexcept { return nodes_.front(); }
  std::size_t destination() const noexcept { return nodes_.back(); }
  // Transmitters are every node except the destination.
  std::span<const std::size_t> transmitters() const noexcept {
    return std::span<const std::size_t>(nodes_).first(hops());
  }

  // Throws InvalidArgument when an index is out of range for the model.
  void check_against(const NetworkModel& model) const;

  std::string to_string() const;  // "0-2-4"

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path& a, const Path& b) { return a.nodes_ <=> b.nodes_; }

 private:
  std::vector<std::size_t> nodes_;
};

enum class ScpMethod { MonteCarlo, Exact, Approx };

const char* to_string(ScpMethod method) noexcept;

struct ScpEstimate final {
  double value = 1.0;
  ScpMethod method = ScpMethod::Exact;
  std::optional<double> ci_halfwidth;  // Monte-Carlo only
  std::optional<std::size_t> trials;   // Monte-Carlo only

  static ScpEstimate exact(double v);
  static ScpEstimate approx(double v);
  static ScpEstimate monte_carlo(double v, double ci, std::size_t trials);
};

// Per-hop Euclidean distances d_{A_i A_{i+1}}. Throws ZeroDistance on co-located hops.
std::vector<double> hop_distances(const NetworkModel& model, const Path& path);

// d_{ij}^alpha between two nodes of the model.
double link_weight(const NetworkModel& model, std::size_t i, std::size_t j);

// Sum_i d_i^alpha / p_{A_i}: the rate of the exponential bottleneck SNR
// min_i p_i |h_i|^2 / d_i^alpha.
double legit_min_snr_rate(const NetworkModel& model, const Path& path);

}  // namespace secroute
