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


// Reference computations written independently of the library, used as test
// oracles. Kept deliberately naive.

#ifndef M2O_TESTS_ORACLES_HPP_
#define M2O_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <vector>

#include "m2o/topology.hpp"

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

struct P {
  double x, y;
};

inline double Dist(P a, P b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Writes out all eight distance conditions one by one.
inline bool Compatible(P t1, P r1, P t2, P r2, double delta) {
  const double l1 = (1 + delta) * Dist(t1, r1);
  const double l2 = (1 + delta) * Dist(t2, r2);
  return Dist(t2, r1) > l1 && Dist(r2, r1) > l1 && Dist(t2, t1) > l1 &&
         Dist(r2, t1) > l1 && Dist(t1, r2) > l2 && Dist(r1, r2) > l2 &&
         Dist(t1, t2) > l2 && Dist(r1, t2) > l2;
}

inline P At(const m2o::Topology& t, m2o::NodeId id) {
  return {t.positions[id].x, t.positions[id].y};
}

inline bool Compatible(const m2o::Topology& t, m2o::DirectedLink a, m2o::DirectedLink b,
                       double delta) {
  return Compatible(At(t, a.tx), At(t, a.rx), At(t, b.tx), At(t, b.rx), delta);
}

// Hop distance to the sink by Bellman-Ford relaxation over directed links.
inline std::vector<int> HopsToSink(const m2o::Topology& t) {
  const int inf = std::numeric_limits<int>::max() / 2;
  std::vector<int> h(t.size(), inf);
  h[t.sink] = 0;
  for (std::size_t round = 0; round < t.size(); ++round) {
    for (const auto& l : t.links) {
      if (h[l.rx] + 1 < h[l.tx]) h[l.tx] = h[l.rx] + 1;
    }
  }
  for (int& v : h) {
    if (v == inf) v = -1;
  }
  return h;
}

// Ordered hidden-node pairs (rs on): transmitters farther apart than cs and
// the pair incompatible.
inline std::size_t HiddenPairCount(const m2o::Topology& t,
                                   const std::vector<m2o::DirectedLink>& links,
                                   double cs, double delta) {
  std::size_t n = 0;
  for (const auto& a : links) {
    for (const auto& b : links) {
      if (a == b) continue;
      if (Dist(At(t, a.tx), At(t, b.tx)) <= cs) continue;
      if (!Compatible(t, a, b, delta)) ++n;
    }
  }
  return n;
}

// Smallest cs on a `step` grid starting at `lo` with no hidden pair.
inline double MinHfdScan(const m2o::Topology& t, const std::vector<m2o::DirectedLink>& links,
                         double delta, double lo, double step) {
  for (double cs = lo;; cs += step) {
    if (HiddenPairCount(t, links, cs, delta) == 0) return cs;
  }
}

// Largest pairwise-compatible subset of ring-`ring` links, by enumerating all
// subsets.
inline int MaxConcurrentBrute(const m2o::Topology& t,
                              const std::vector<m2o::DirectedLink>& links, int ring,
                              double delta) {
  const std::vector<int> h = HopsToSink(t);
  std::vector<m2o::DirectedLink> c;
  for (const auto& l : links) {
    if (h[l.tx] == ring) c.push_back(l);
  }
  int best = 0;
  const std::uint32_t n = static_cast<std::uint32_t>(c.size());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::uint32_t i = 0; i < n && ok; ++i) {
      for (std::uint32_t j = i + 1; j < n && ok; ++j) {
        if ((mask >> i & 1) && (mask >> j & 1) && !Compatible(t, c[i], c[j], delta)) {
          ok = false;
        }
      }
    }
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

// Max over 1-degree angle triples of the smallest pairwise chord on a unit
// circle.
inline double Lemma1MaxMinChord() {
  double best = 0.0;
  for (int a = 0; a < 360; ++a) {
    for (int b = a + 1; b < 360; ++b) {
      for (int c = b + 1; c < 360; ++c) {
        const double ra = a * kPi / 180, rb = b * kPi / 180, rc = c * kPi / 180;
        const P pa{std::cos(ra), std::sin(ra)}, pb{std::cos(rb), std::sin(rb)},
            pc{std::cos(rc), std::sin(rc)};
        best = std::max(best, std::min({Dist(pa, pb), Dist(pb, pc), Dist(pa, pc)}));
      }
    }
  }
  return best;
}

// Four-way 2-hop concurrency geometry from its trigonometric pieces: 2-hop nodes at
// radius 1+rho, the closest pair separated by theta and the binding
// non-adjacent pair by 2*theta. Feasible when the 1-hop receivers are
// compatible and some cs separates the sensing limits.
inline bool Lemma2Geometric(double theta, double rho, double delta) {
  const double r2 = 1.0 + rho;
  const P a{r2, 0.0}, b{r2 * std::cos(theta), r2 * std::sin(theta)},
      c{r2 * std::cos(2 * theta), r2 * std::sin(2 * theta)};
  const P ra{1.0, 0.0}, rb{std::cos(theta), std::sin(theta)};
  const double upper = Dist(a, b);  // adjacent 2-hop nodes must not sense
  const double lower = Dist(c, ra);  // farthest incompatible pair must sense
  return Dist(ra, rb) > (1 + delta) * rho && lower < upper;
}

// Equal per-source rate supported by per-link airtimes on a routing tree:
// every link e must carry (sources routed through e) * rate <= airtime(e)*L.
inline double EqualRateAggregate(const m2o::Topology& t,
                                 const std::map<m2o::DirectedLink, double>& airtime,
                                 double link_capacity) {
  std::map<m2o::DirectedLink, int> load;
  int sources = 0;
  for (m2o::NodeId s = 0; s < t.size(); ++s) {
    if (!m2o::GeneratesTraffic(t.roles[s])) continue;
    ++sources;
    for (m2o::NodeId n = s; n != t.sink; n = t.next_hop[n]) ++load[{n, t.next_hop[n]}];
  }
  double rate = std::numeric_limits<double>::infinity();
  for (const auto& [link, count] : load) {
    const auto it = airtime.find(link);
    const double a = it == airtime.end() ? 0.0 : it->second;
    rate = std::min(rate, a * link_capacity / count);
  }
  return sources == 0 ? 0.0 : rate * sources;
}

}  // namespace oracle

#endif  // M2O_TESTS_ORACLES_HPP_
