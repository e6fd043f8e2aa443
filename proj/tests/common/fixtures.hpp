// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "secroute/model.hpp"

namespace secroute::testing {

// Relays on circles of radius 5 and 15 about the origin; A1 = (-10, 0), A5 = (10, 0).
inline std::vector<Vec2> six_nodes() {
  constexpr double pi = std::numbers::pi;
  return {{-10.0, 0.0},
          {5.0 * std::cos(0.75 * pi), 5.0 * std::sin(0.75 * pi)},
          {0.0, 0.0},
          {5.0 * std::cos(-0.25 * pi), 5.0 * std::sin(-0.25 * pi)},
          {10.0, 0.0},
          {15.0 * std::cos(0.25 * pi), 15.0 * std::sin(0.25 * pi)}};
}

inline NetworkModel six_node_model(double lambda_e) {
  return NetworkModel::uniform_power(six_nodes(), 1.0, 4.0, lambda_e);
}

// One to four hops from A1 to A5.
inline std::vector<Path> six_node_paths() {
  return {Path({0, 4}), Path({0, 2, 4}), Path({0, 1, 2, 4}), Path({0, 1, 2, 3, 4})};
}

// Largest gap between an empirical CDF and a reference CDF.
template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                  std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return d;
}

}  // namespace secroute::testing
