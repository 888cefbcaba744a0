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

#ifndef M2O_CONFLICT_HPP_
#define M2O_CONFLICT_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "m2o/geometry.hpp"
#include "m2o/topology.hpp"

namespace m2o {

// Pairwise relations over an indexed link list. Both matrices are dense
// row-major n*n.
struct CompatibilityGraph {
  std::vector<DirectedLink> links;
  std::vector<char> compatible;
  std::vector<char> senses;

  std::size_t size() const { return links.size(); }
  bool Compatible(std::size_t i, std::size_t j) const {
    return compatible[i * links.size() + j] != 0;
  }
  bool Senses(std::size_t i, std::size_t j) const {
    return senses[i * links.size() + j] != 0;
  }
};

CompatibilityGraph BuildCompatibilityGraph(const Topology& topology,
                                           std::span<const DirectedLink> links,
                                           const RadioConfig& config);
// Uses topology.links.
CompatibilityGraph BuildCompatibilityGraph(const Topology& topology,
                                           const RadioConfig& config);

enum class HnCause { kInsufficientCsRange, kNoRestartCapture };
const char* HnCauseName(HnCause cause);

struct HiddenNodePair {
  DirectedLink aggressor;
  DirectedLink victim;
  HnCause cause = HnCause::kInsufficientCsRange;
};

// Ordered pairs whose transmitters are outside each other's cs_range and
// whose concurrent transmission breaks the pairwise model. Without receiver
// restart, a victim receiver inside the aggressor's cs_range also gets locked
// onto the aggressor's frame.
std::vector<HiddenNodePair> HiddenNodePairs(const Topology& topology,
                                            std::span<const DirectedLink> links,
                                            const RadioConfig& config);
std::vector<HiddenNodePair> HiddenNodePairs(const Topology& topology,
                                            const RadioConfig& config);

// Smallest cs_range (from the inter-transmitter distances, or 0) with no
// hidden-node pair. Requires config.rs_mode.
double MinHfdCsRange(const Topology& topology,
                     std::span<const DirectedLink> links,
                     const RadioConfig& config);
double MinHfdCsRange(const Topology& topology, const RadioConfig& config);

// Exact size of the largest pairwise-compatible set of links whose
// transmitter is an i-hop node. With `hfd_constraint` the chosen transmitters
// must also be mutually outside cs_range. At most 64 candidate links.
int MaxConcurrentRing(const Topology& topology,
                      std::span<const DirectedLink> links,
                      const RadioConfig& config, int ring,
                      bool hfd_constraint = false);
// Uses the routed links.
int MaxConcurrentRing(const Topology& topology, const RadioConfig& config,
                      int ring, bool hfd_constraint = false);

// Lower and upper cs_range limits (in units of d0) for four concurrently
// active 2-hop nodes whose smallest separation angle is theta, with
// rho = d1/d0. The binding angle between non-adjacent lines is 2*theta.
double Lemma2CsLower(double theta, double rho);
double Lemma2CsUpper(double theta, double rho);

// True when a cs_range interval and receiver spacing admit four concurrent
// 2-hop transmissions.
bool Lemma2Feasible(double theta, double rho, double delta);

// Received power of victim.tx at victim.rx over the summed power of every
// other node in `active`. +infinity when nothing else is active.
double AggregateSir(const Topology& topology, const RadioConfig& config,
                    const DirectedLink& victim,
                    std::span<const NodeId> active);

}  // namespace m2o

#endif  // M2O_CONFLICT_HPP_
