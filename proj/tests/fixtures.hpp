// Copyright 2026 The m2o Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Test-only topology generators.

#ifndef M2O_TESTS_FIXTURES_HPP_
#define M2O_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "m2o/topology.hpp"

namespace fixture {

// Equal-link-length network whose chains bend randomly after the first hop.
// Chain 1 leaves roughly opposite chain 0 so at least two 2-hop links can be
// compatible; the other chains take random directions at least 15 degrees
// apart.
inline m2o::Topology BentChains(std::uint64_t seed, double d = 250.0) {
  constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int chains = 2 + static_cast<int>(rng() % 7);
  const int hops = 2 + static_cast<int>(rng() % 5);
  std::vector<double> angles{0.0, kPi + (unit(rng) - 0.5) * 0.35};
  while (static_cast<int>(angles.size()) < chains) {
    const double a = unit(rng) * 2 * kPi;
    bool ok = true;
    for (double b : angles) {
      double gap = std::fmod(std::abs(a - b), 2 * kPi);
      gap = std::min(gap, 2 * kPi - gap);
      ok &= gap > 15.0 * kPi / 180.0;
    }
    if (ok) angles.push_back(a);
  }
  m2o::Topology t;
  t.positions.push_back({0, 0});
  t.roles.push_back(m2o::NodeRole::kSink);
  t.sink = 0;
  for (double a : angles) {
    double heading = a;
    m2o::Point2D p{0, 0};
    m2o::NodeId prev = 0;
    for (int ring = 1; ring <= hops; ++ring) {
      if (ring > 1) heading += (unit(rng) - 0.5) * 0.8;
      p = {p.x + d * std::cos(heading), p.y + d * std::sin(heading)};
      const auto id = static_cast<m2o::NodeId>(t.positions.size());
      t.positions.push_back(p);
      t.roles.push_back(ring == hops ? m2o::NodeRole::kSource : m2o::NodeRole::kRelay);
      t.links.push_back({id, prev});
      prev = id;
    }
  }
  m2o::AssignMinHopRoutes(t);
  return t;
}

}  // namespace fixture

#endif  // M2O_TESTS_FIXTURES_HPP_
