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

#ifndef M2O_TOPOLOGY_HPP_
#define M2O_TOPOLOGY_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "m2o/geometry.hpp"

namespace m2o {

inline constexpr NodeId kNoRoute = std::numeric_limits<NodeId>::max();

enum class NodeRole { kSource, kRelay, kSink, kSourceAndRelay };

const char* RoleName(NodeRole role);
NodeRole ParseRole(const std::string& name);

inline bool GeneratesTraffic(NodeRole role) {
  return role == NodeRole::kSource || role == NodeRole::kSourceAndRelay;
}

// A many-to-one network. Node ids are dense indices into `positions`/`roles`.
// `links` are the directed links the network may use; `next_hop` is the static
// route of every node toward `sink` (kNoRoute for the sink and for nodes that
// carry no traffic); `ring_index` is the min-hop distance to the sink over
// `links` (-1 when unreachable).
struct Topology {
  std::vector<Point2D> positions;
  std::vector<NodeRole> roles;
  std::vector<DirectedLink> links;
  NodeId sink = 0;
  std::vector<NodeId> next_hop;
  std::vector<int> ring_index;

  std::size_t size() const { return positions.size(); }
  std::vector<NodeId> Sources() const;
  // Links actually traversed by the routes, ordered by transmitter id.
  std::vector<DirectedLink> RouteLinks() const;
  // Longest link in `links`.
  double MaxLinkLength() const;
  double LinkLength(const DirectedLink& l) const {
    return Distance(positions[l.tx], positions[l.rx]);
  }
  // Sequence of node ids from `source` to the sink following `next_hop`.
  std::vector<NodeId> PathOf(NodeId source) const;

  // Checks the structural invariants: one sink, acyclic routes terminating at
  // the sink, every source routed, no zero-length links. Throws Error.
  void Validate() const;
};

// Breadth-first hop count from every node to the sink over `links`.
std::vector<int> ComputeRingIndex(const Topology& topology);

// Min-hop next-hop assignment toward the sink over `links`. Ties are broken by
// the candidate's Euclidean distance to the sink, then by node id. Throws
// Error(kUnreachable) listing every source that cannot reach the sink.
std::vector<NodeId> RouteMinHop(const Topology& topology);

// Recomputes ring_index and next_hop in place.
void AssignMinHopRoutes(Topology& topology);

// Appends directed links in both directions between every node pair within
// `tx_range`.
void AddUnitDiskLinks(Topology& topology, double tx_range);

// ---------------------------------------------------------------------------
// Canonical networks: linear chains radiating from a single sink with the
// same ring spacing on every chain.

struct CanonicalSpec {
  int num_chains = 3;
  // ring_spacings[i] is the distance between the (i+1)-hop and i-hop nodes;
  // its size is the number of hops per chain.
  std::vector<double> ring_spacings;
  // Empty means evenly spaced, chain j at angle 2*pi*j/num_chains.
  std::vector<double> chain_angles;

  int hops_per_chain() const { return static_cast<int>(ring_spacings.size()); }
  void Validate() const;

  static CanonicalSpec EqualLength(int chains, int hops, double d);
  // d0 for the first ring, d1 for the second, d for the rest.
  static CanonicalSpec Variable(int chains, int hops, double d0, double d1,
                                double d);
};

// Named spacing presets. Table1Preset: d0=250, d1=242, di=250. Fig12Preset:
// d1/d0 = 0.973, the largest ratio whose 2-hop transmitters still sit
// 3.417*d0 apart while 2-hop receivers stay compatible. Fig15Preset: d1 = 0.9*d0.
CanonicalSpec Table1Preset(int hops = 7);
CanonicalSpec Fig12Preset(int hops, double d0 = 250.0);
CanonicalSpec Fig15Preset(int hops, double d0 = 250.0);

// Node id of the ring-`ring` node (1-based) on chain `chain` (0-based) of a
// network produced by BuildCanonical.
NodeId CanonicalNodeId(const CanonicalSpec& spec, int chain, int ring);

// Only the outermost node of each chain is a source; chain links only.
Topology BuildCanonical(const CanonicalSpec& spec);

enum class ChainRoles {
  kAllSources,      // nodes 1..n all generate traffic
  kOutermostOnly,   // only node n generates traffic
  kFromThirdNode,   // nodes i >= 3 generate traffic
};

// n+1 collinear nodes spaced `d` apart; node 0 is the sink.
Topology BuildLinearChain(int n, double d, ChainRoles roles);

inline constexpr double kDefaultTwoChainBend = 0.82 * 3.14159265358979323846;

// Two equal-length chains meeting at the sink with `bend_angle` between them.
Topology BuildTwoChainAsym(double d, double bend_angle = kDefaultTwoChainBend,
                           int hops = 7);

// Sink at the centre of a disk, `n_boundary_sources` sources evenly spaced on
// the boundary; each source grows a chain of random relays toward the sink.
// Links: every node pair within tx_range, both directions.
Topology BuildRandomDisk(double disk_radius, double tx_range,
                         int n_boundary_sources, std::uint64_t seed);

// Canonical relay core inside `inner_radius`, random source+relay nodes in
// the annulus out to `outer_radius` with pairwise separation >= min_sep.
struct CentricParams {
  double outer_radius = 2000.0;
  double inner_radius = 980.0;
  CanonicalSpec canonical = CanonicalSpec::Variable(3, 5, 200.0, 180.0, 200.0);
  double min_sep = 125.0;
  int n_outer = 284;
  double tx_range = 250.0;
  std::uint64_t seed = 1;
};
Topology BuildCentric(const CentricParams& params);

// Two-layer canonical core: three central chains of two rings, each splitting
// into two straight branches (half-angle pi/12) starting at ring 3 and
// reaching the inner radius. 31 core nodes including the sink.
struct ManifoldParams {
  double outer_radius = 2000.0;
  double inner_radius = 1026.0;
  double d0 = 200.0;
  double d1 = 180.0;
  int central_rings = 2;
  int branch_nodes = 4;
  double branch_half_angle = 3.14159265358979323846 / 12.0;
  double min_sep = 125.0;
  int n_outer = 269;
  double tx_range = 250.0;
  // Uniform jitter of every core relay, as a fraction of d0 (0 = exact).
  double position_error = 0.0;
  std::uint64_t seed = 1;
};
Topology BuildManifold(const ManifoldParams& params);
// Number of core (designed) nodes, sink included.
int ManifoldCoreSize(const ManifoldParams& params);

// Pure random benchmark: `n_inner` unconstrained random relays inside
// inner_radius plus the same outer random region.
struct BenchmarkParams {
  double outer_radius = 2000.0;
  double inner_radius = 980.0;
  int n_inner = 146;
  double min_sep = 125.0;
  int n_outer = 284;
  double tx_range = 250.0;
  std::uint64_t seed = 1;
};
Topology BuildRandomBenchmark(const BenchmarkParams& params);

// Fig12Preset three-chain network plus two spur nodes A and B whose links
// A->A' and B->B' conflict with transmitters more than 3.417*d0 apart.
// Returns ids of A and B through the out-parameters when non-null.
Topology BuildHfpExample(double d0, int hops = 2, NodeId* node_a = nullptr,
                         NodeId* node_b = nullptr);

// ---------------------------------------------------------------------------
// Text serialization ("topology v1").

std::string SerializeTopology(const Topology& topology);
Topology ParseTopology(const std::string& text);
void WriteTopologyFile(const Topology& topology, const std::string& path);
Topology ReadTopologyFile(const std::string& path);

}  // namespace m2o

#endif  // M2O_TOPOLOGY_HPP_
