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

#include "m2o/conflict.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "m2o/error.hpp"

namespace m2o {
namespace {

void CheckLinks(const Topology& t, std::span<const DirectedLink> links) {
  for (const auto& l : links) {
    if (l.tx >= t.size() || l.rx >= t.size() || l.tx == l.rx) {
      Fail(ErrorCode::kInvalidArgument,
           "link " + std::to_string(l.tx) + "->" + std::to_string(l.rx) +
               " is not valid for this topology");
    }
  }
}

bool SameLink(const DirectedLink& a, const DirectedLink& b) { return a == b; }

// Largest clique in a graph of at most 64 vertices given as adjacency masks.
int MaxClique(const std::vector<std::uint64_t>& adj, std::uint64_t cand,
              int size, int best) {
  if (cand == 0) return std::max(size, best);
  while (cand != 0) {
    if (size + std::popcount(cand) <= best) return best;
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    best = MaxClique(adj, cand & adj[static_cast<std::size_t>(v)], size + 1, best);
  }
  return best;
}

}  // namespace

CompatibilityGraph BuildCompatibilityGraph(const Topology& t,
                                           std::span<const DirectedLink> links,
                                           const RadioConfig& config) {
  config.Validate();
  CheckLinks(t, links);
  CompatibilityGraph g;
  g.links.assign(links.begin(), links.end());
  const std::size_t n = links.size();
  g.compatible.assign(n * n, 0);
  g.senses.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const char c = PairwiseCompatible(links[i], links[j], t.positions, config.delta);
      const char s = WithinCs(t.positions[links[i].tx], t.positions[links[j].tx],
                              config.cs_range);
      g.compatible[i * n + j] = g.compatible[j * n + i] = c;
      g.senses[i * n + j] = g.senses[j * n + i] = s;
    }
  }
  return g;
}

CompatibilityGraph BuildCompatibilityGraph(const Topology& t,
                                           const RadioConfig& config) {
  return BuildCompatibilityGraph(t, t.links, config);
}

const char* HnCauseName(HnCause cause) {
  return cause == HnCause::kInsufficientCsRange ? "insufficient_csrange"
                                                : "no_restart_capture";
}

std::vector<HiddenNodePair> HiddenNodePairs(const Topology& t,
                                            std::span<const DirectedLink> links,
                                            const RadioConfig& config) {
  config.Validate();
  CheckLinks(t, links);
  std::vector<HiddenNodePair> out;
  const auto& p = t.positions;
  for (const auto& a : links) {
    for (const auto& b : links) {
      if (SameLink(a, b)) continue;
      if (WithinCs(p[a.tx], p[b.tx], config.cs_range)) continue;
      if (!PairwiseCompatible(a, b, p, config.delta)) {
        out.push_back({a, b, HnCause::kInsufficientCsRange});
      } else if (!config.rs_mode && b.rx != a.tx &&
                 Distance(p[a.tx], p[b.rx]) <= config.cs_range) {
        out.push_back({a, b, HnCause::kNoRestartCapture});
      }
    }
  }
  return out;
}

std::vector<HiddenNodePair> HiddenNodePairs(const Topology& t,
                                            const RadioConfig& config) {
  return HiddenNodePairs(t, t.links, config);
}

double MinHfdCsRange(const Topology& t, std::span<const DirectedLink> links,
                     const RadioConfig& config) {
  config.Validate();
  if (!config.rs_mode) {
    Fail(ErrorCode::kInvalidArgument,
         "minimum hidden-node-free cs_range requires receiver restart");
  }
  CheckLinks(t, links);
  // A pair stops being hidden exactly when cs_range reaches the distance
  // between its transmitters.
  double need = 0.0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    for (std::size_t j = i + 1; j < links.size(); ++j) {
      const double dt = Distance(t.positions[links[i].tx], t.positions[links[j].tx]);
      if (dt > need && !PairwiseCompatible(links[i], links[j], t.positions, config.delta)) {
        need = dt;
      }
    }
  }
  return need;
}

double MinHfdCsRange(const Topology& t, const RadioConfig& config) {
  return MinHfdCsRange(t, t.links, config);
}

int MaxConcurrentRing(const Topology& t, std::span<const DirectedLink> links,
                      const RadioConfig& config, int ring, bool hfd_constraint) {
  if (ring < 1) Fail(ErrorCode::kInvalidArgument, "ring must be >= 1");
  CheckLinks(t, links);
  const std::vector<int> rings =
      t.ring_index.size() == t.size() ? t.ring_index : ComputeRingIndex(t);
  std::vector<DirectedLink> cand;
  for (const auto& l : links) {
    if (rings[l.tx] == ring) cand.push_back(l);
  }
  if (cand.size() > 64) {
    Fail(ErrorCode::kInvalidArgument, "ring has more than 64 candidate links");
  }
  const CompatibilityGraph g = BuildCompatibilityGraph(t, cand, config);
  std::vector<std::uint64_t> adj(cand.size(), 0);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t j = 0; j < cand.size(); ++j) {
      if (i != j && g.Compatible(i, j) && !(hfd_constraint && g.Senses(i, j))) {
        adj[i] |= std::uint64_t{1} << j;
      }
    }
  }
  const std::uint64_t all =
      cand.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cand.size()) - 1;
  return MaxClique(adj, all, 0, 0);
}

int MaxConcurrentRing(const Topology& t, const RadioConfig& config, int ring,
                      bool hfd_constraint) {
  const std::vector<DirectedLink> links = t.RouteLinks();
  return MaxConcurrentRing(t, links, config, ring, hfd_constraint);
}

double Lemma2CsLower(double theta, double rho) {
  const double u = 1.0 + rho;
  return std::sqrt(std::max(0.0, u * u + 1.0 - 2.0 * u * std::cos(2.0 * theta)));
}

double Lemma2CsUpper(double theta, double rho) {
  return 2.0 * (1.0 + rho) * std::sin(theta / 2.0);
}

bool Lemma2Feasible(double theta, double rho, double delta) {
  if (!(theta > 0.0) || !(rho > 0.0)) return false;
  const double c = std::cos(theta);
  // Receiver spacing on the 1-hop ring.
  if (!(rho < std::sqrt(2.0 * (1.0 - c)) / (1.0 + delta))) return false;
  // The squared sensing window, upper^2 - lower^2, as a quadratic in 1+rho.
  const double u = 1.0 + rho;
  return (1.0 - 2.0 * c) * u * u + 2.0 * (2.0 * c * c - 1.0) * u - 1.0 > 0.0;
}

double AggregateSir(const Topology& t, const RadioConfig& config,
                    const DirectedLink& victim, std::span<const NodeId> active) {
  CheckLinks(t, std::span<const DirectedLink>(&victim, 1));
  const auto& p = t.positions;
  const double signal = ReceivedPower(config.tx_power, Distance(p[victim.tx], p[victim.rx]),
                                      config.path_loss_exp);
  double noise = 0.0;
  for (NodeId n : active) {
    if (n >= t.size()) Fail(ErrorCode::kInvalidArgument, "active node out of range");
    if (n == victim.tx) continue;
    if (n == victim.rx) {
      Fail(ErrorCode::kInvalidArgument, "victim receiver cannot be transmitting");
    }
    noise += ReceivedPower(config.tx_power, Distance(p[n], p[victim.rx]),
                           config.path_loss_exp);
  }
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return signal / noise;
}

}  // namespace m2o
