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

#include "m2o/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "m2o/error.hpp"
#include "rng.hpp"

namespace m2o {
namespace {

using internal::DeriveSeed;
using internal::Rng;

constexpr double kPi = std::numbers::pi;

Point2D Polar(double r, double angle) {
  return {r * std::cos(angle), r * std::sin(angle)};
}

NodeId AddNode(Topology& t, Point2D pos, NodeRole role) {
  t.positions.push_back(pos);
  t.roles.push_back(role);
  return static_cast<NodeId>(t.positions.size() - 1);
}

Topology NewWithSink() {
  Topology t;
  t.sink = AddNode(t, {0.0, 0.0}, NodeRole::kSink);
  return t;
}

// Area-uniform point in the annulus [r_in, r_out] around the origin.
Point2D SampleAnnulus(Rng& rng, double r_in, double r_out) {
  const double r = std::sqrt(rng.Uniform(r_in * r_in, r_out * r_out));
  return Polar(r, rng.Uniform(0.0, 2.0 * kPi));
}

bool FarFromAll(const Topology& t, std::span<const NodeId> ids, Point2D p,
                double min_sep, NodeId skip = kNoRoute) {
  for (NodeId id : ids) {
    if (id != skip && Distance(t.positions[id], p) < min_sep) return false;
  }
  return true;
}

// Places `n_outer` source+relay nodes in the annulus with pairwise separation
// at least `min_sep`. Returns their ids.
std::vector<NodeId> PlaceOuter(Topology& t, Rng& rng, double r_in,
                               double r_out, int n_outer, double min_sep) {
  std::vector<NodeId> ids;
  const long max_attempts = 2000L * std::max(n_outer, 1);
  long attempts = 0;
  while (static_cast<int>(ids.size()) < n_outer) {
    if (++attempts > max_attempts) {
      Fail(ErrorCode::kInfeasible,
           "could not place " + std::to_string(n_outer) +
               " outer nodes with min separation " + std::to_string(min_sep));
    }
    const Point2D p = SampleAnnulus(rng, r_in, r_out);
    if (FarFromAll(t, ids, p, min_sep)) {
      ids.push_back(AddNode(t, p, NodeRole::kSourceAndRelay));
    }
  }
  return ids;
}

// Re-draws nodes that cannot reach the sink until every one of them is
// connected. Unreachable nodes support no reachable node, so moving them never
// disconnects the rest. `redraw(id)` must move node `id`.
template <typename Redraw>
void RepairConnectivity(Topology& t, std::span<const NodeId> movable,
                        double tx_range, Redraw redraw) {
  for (int round = 0; round < 10000; ++round) {
    t.links.clear();
    AddUnitDiskLinks(t, tx_range);
    const std::vector<int> ring = ComputeRingIndex(t);
    std::vector<NodeId> stranded;
    for (NodeId id : movable) {
      if (ring[id] < 0) stranded.push_back(id);
    }
    if (stranded.empty()) return;
    for (NodeId id : stranded) redraw(id);
  }
  Fail(ErrorCode::kUnreachable, "random region could not be connected to sink");
}

void RepairOuterConnectivity(Topology& t, Rng& rng, std::span<const NodeId> outer,
                             double r_in, double r_out, double min_sep,
                             double tx_range) {
  RepairConnectivity(t, outer, tx_range, [&](NodeId id) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100000) {
        Fail(ErrorCode::kInfeasible, "cannot re-place a disconnected node");
      }
      const Point2D p = SampleAnnulus(rng, r_in, r_out);
      if (FarFromAll(t, outer, p, min_sep, id)) {
        t.positions[id] = p;
        return;
      }
    }
  });
}

}  // namespace

const char* RoleName(NodeRole role) {
  switch (role) {
    case NodeRole::kSource:
      return "source";
    case NodeRole::kRelay:
      return "relay";
    case NodeRole::kSink:
      return "sink";
    case NodeRole::kSourceAndRelay:
      return "source_and_relay";
  }
  return "relay";
}

NodeRole ParseRole(const std::string& name) {
  if (name == "source") return NodeRole::kSource;
  if (name == "relay") return NodeRole::kRelay;
  if (name == "sink") return NodeRole::kSink;
  if (name == "source_and_relay") return NodeRole::kSourceAndRelay;
  Fail(ErrorCode::kParse, "unknown node role '" + name + "'");
}

std::vector<NodeId> Topology::Sources() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < size(); ++i) {
    if (GeneratesTraffic(roles[i])) out.push_back(i);
  }
  return out;
}

std::vector<DirectedLink> Topology::RouteLinks() const {
  // A link is traversed if some source's path crosses it.
  std::vector<char> used(size(), 0);
  for (NodeId s : Sources()) {
    for (NodeId v = s; v != sink && v != kNoRoute && !used[v]; v = next_hop[v]) {
      used[v] = 1;
    }
  }
  std::vector<DirectedLink> out;
  for (NodeId i = 0; i < size(); ++i) {
    if (used[i] && next_hop[i] != kNoRoute) out.push_back({i, next_hop[i]});
  }
  return out;
}

double Topology::MaxLinkLength() const {
  double m = 0.0;
  for (const auto& l : links) m = std::max(m, LinkLength(l));
  return m;
}

std::vector<NodeId> Topology::PathOf(NodeId source) const {
  std::vector<NodeId> path{source};
  NodeId v = source;
  while (v != sink) {
    v = next_hop[v];
    if (v == kNoRoute || path.size() > size()) {
      Fail(ErrorCode::kUnreachable,
           "node " + std::to_string(source) + " has no route to the sink");
    }
    path.push_back(v);
  }
  return path;
}

void Topology::Validate() const {
  if (roles.size() != positions.size() || next_hop.size() != positions.size()) {
    Fail(ErrorCode::kInvalidArgument, "topology arrays have mismatched sizes");
  }
  int sinks = 0;
  for (NodeRole r : roles) sinks += r == NodeRole::kSink;
  if (sinks != 1 || sink >= size() || roles[sink] != NodeRole::kSink) {
    Fail(ErrorCode::kInvalidArgument, "topology must have exactly one sink");
  }
  for (const auto& l : links) {
    if (l.tx >= size() || l.rx >= size() || l.tx == l.rx) {
      Fail(ErrorCode::kInvalidArgument, "link references an invalid node");
    }
    if (!(LinkLength(l) > 0.0)) {
      Fail(ErrorCode::kInvalidArgument, "zero-length link");
    }
  }
  for (NodeId s : Sources()) PathOf(s);
}

std::vector<int> ComputeRingIndex(const Topology& t) {
  std::vector<std::vector<NodeId>> incoming(t.size());
  for (const auto& l : t.links) incoming[l.rx].push_back(l.tx);
  std::vector<int> ring(t.size(), -1);
  std::deque<NodeId> queue{t.sink};
  ring[t.sink] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId u : incoming[v]) {
      if (ring[u] < 0) {
        ring[u] = ring[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return ring;
}

std::vector<NodeId> RouteMinHop(const Topology& t) {
  const std::vector<int> ring = ComputeRingIndex(t);
  std::vector<NodeId> unreachable;
  for (NodeId s : t.Sources()) {
    if (ring[s] < 0) unreachable.push_back(s);
  }
  if (!unreachable.empty()) {
    std::ostringstream msg;
    msg << "sources cannot reach the sink:";
    for (NodeId s : unreachable) msg << ' ' << s;
    Fail(ErrorCode::kUnreachable, msg.str());
  }
  const Point2D sink = t.positions[t.sink];
  std::vector<NodeId> next(t.size(), kNoRoute);
  for (const auto& l : t.links) {
    if (l.tx == t.sink || ring[l.tx] < 0 || ring[l.rx] != ring[l.tx] - 1) {
      continue;
    }
    NodeId& best = next[l.tx];
    if (best == kNoRoute) {
      best = l.rx;
      continue;
    }
    const double cand = Distance(t.positions[l.rx], sink);
    const double cur = Distance(t.positions[best], sink);
    if (cand < cur || (cand == cur && l.rx < best)) best = l.rx;
  }
  return next;
}

void AssignMinHopRoutes(Topology& t) {
  t.next_hop = RouteMinHop(t);
  t.ring_index = ComputeRingIndex(t);
}

void AddUnitDiskLinks(Topology& t, double tx_range) {
  for (NodeId i = 0; i < t.size(); ++i) {
    for (NodeId j = 0; j < t.size(); ++j) {
      if (i != j && Distance(t.positions[i], t.positions[j]) <= tx_range) {
        t.links.push_back({i, j});
      }
    }
  }
}

// ---------------------------------------------------------------------------

void CanonicalSpec::Validate() const {
  if (num_chains < 1) Fail(ErrorCode::kInvalidArgument, "num_chains must be >= 1");
  if (ring_spacings.empty()) {
    Fail(ErrorCode::kInvalidArgument, "at least one ring spacing is required");
  }
  for (double d : ring_spacings) {
    if (!(d > 0.0)) Fail(ErrorCode::kInvalidArgument, "ring spacings must be > 0");
  }
  if (!chain_angles.empty()) {
    if (static_cast<int>(chain_angles.size()) != num_chains) {
      Fail(ErrorCode::kInvalidArgument, "chain_angles size != num_chains");
    }
    for (std::size_t i = 0; i < chain_angles.size(); ++i) {
      for (std::size_t j = i + 1; j < chain_angles.size(); ++j) {
        double diff = std::fmod(std::abs(chain_angles[i] - chain_angles[j]),
                                2.0 * kPi);
        if (diff < 1e-12 || 2.0 * kPi - diff < 1e-12) {
          Fail(ErrorCode::kInvalidArgument,
               "chain angles must be distinct modulo 2*pi");
        }
      }
    }
  }
}

CanonicalSpec CanonicalSpec::EqualLength(int chains, int hops, double d) {
  CanonicalSpec s;
  s.num_chains = chains;
  s.ring_spacings.assign(static_cast<std::size_t>(std::max(hops, 0)), d);
  return s;
}

CanonicalSpec CanonicalSpec::Variable(int chains, int hops, double d0,
                                      double d1, double d) {
  CanonicalSpec s = EqualLength(chains, hops, d);
  if (hops >= 1) s.ring_spacings[0] = d0;
  if (hops >= 2) s.ring_spacings[1] = d1;
  return s;
}

CanonicalSpec Table1Preset(int hops) {
  return CanonicalSpec::Variable(3, hops, 250.0, 242.0, 250.0);
}

CanonicalSpec Fig12Preset(int hops, double d0) {
  return CanonicalSpec::Variable(3, hops, d0, 0.973 * d0, d0);
}

CanonicalSpec Fig15Preset(int hops, double d0) {
  return CanonicalSpec::Variable(3, hops, d0, 0.9 * d0, d0);
}

NodeId CanonicalNodeId(const CanonicalSpec& spec, int chain, int ring) {
  return static_cast<NodeId>(1 + chain * spec.hops_per_chain() + (ring - 1));
}

Topology BuildCanonical(const CanonicalSpec& spec) {
  spec.Validate();
  Topology t = NewWithSink();
  const int n = spec.hops_per_chain();
  for (int j = 0; j < spec.num_chains; ++j) {
    const double angle = spec.chain_angles.empty()
                             ? 2.0 * kPi * j / spec.num_chains
                             : spec.chain_angles[static_cast<std::size_t>(j)];
    double radius = 0.0;
    for (int i = 1; i <= n; ++i) {
      radius += spec.ring_spacings[static_cast<std::size_t>(i - 1)];
      const NodeId id = AddNode(t, Polar(radius, angle),
                                i == n ? NodeRole::kSource : NodeRole::kRelay);
      t.links.push_back({id, i == 1 ? t.sink : id - 1});
    }
  }
  for (NodeId a = 0; a < t.size(); ++a) {
    for (NodeId b = a + 1; b < t.size(); ++b) {
      if (Distance(t.positions[a], t.positions[b]) == 0.0) {
        Fail(ErrorCode::kInvalidArgument,
             "canonical spec places two nodes at the same position");
      }
    }
  }
  AssignMinHopRoutes(t);
  return t;
}

Topology BuildLinearChain(int n, double d, ChainRoles roles) {
  if (n < 1) Fail(ErrorCode::kInvalidArgument, "chain needs at least one hop");
  if (!(d > 0.0)) Fail(ErrorCode::kInvalidArgument, "chain spacing must be > 0");
  Topology t = NewWithSink();
  for (int i = 1; i <= n; ++i) {
    bool source = false;
    switch (roles) {
      case ChainRoles::kAllSources:
        source = true;
        break;
      case ChainRoles::kOutermostOnly:
        source = i == n;
        break;
      case ChainRoles::kFromThirdNode:
        source = i >= 3;
        break;
    }
    NodeRole role = NodeRole::kRelay;
    if (source) role = i == n ? NodeRole::kSource : NodeRole::kSourceAndRelay;
    const NodeId id = AddNode(t, {i * d, 0.0}, role);
    t.links.push_back({id, id - 1});
  }
  AssignMinHopRoutes(t);
  return t;
}

Topology BuildTwoChainAsym(double d, double bend_angle, int hops) {
  if (!(bend_angle > 0.0 && bend_angle <= kPi)) {
    Fail(ErrorCode::kInvalidArgument, "bend angle must lie in (0, pi]");
  }
  CanonicalSpec spec = CanonicalSpec::EqualLength(2, hops, d);
  spec.chain_angles = {0.0, bend_angle};
  return BuildCanonical(spec);
}

Topology BuildRandomDisk(double disk_radius, double tx_range,
                         int n_boundary_sources, std::uint64_t seed) {
  if (!(tx_range > 0.0 && disk_radius > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "radius and tx_range must be positive");
  }
  if (n_boundary_sources < 1) {
    Fail(ErrorCode::kInvalidArgument, "need at least one boundary source");
  }
  Topology t = NewWithSink();
  std::vector<NodeId> sources;
  for (int k = 0; k < n_boundary_sources; ++k) {
    sources.push_back(AddNode(t, Polar(disk_radius, 2.0 * kPi * k / n_boundary_sources),
                              NodeRole::kSource));
  }
  for (int k = 0; k < n_boundary_sources; ++k) {
    Rng rng(DeriveSeed(seed, 0x726e64, static_cast<std::uint64_t>(k)));
    Point2D prev = t.positions[sources[static_cast<std::size_t>(k)]];
    for (int steps = 0; Distance(prev, {0.0, 0.0}) > tx_range; ++steps) {
      if (steps > 100000) Fail(ErrorCode::kInternal, "random chain did not terminate");
      const double bearing = std::atan2(-prev.y, -prev.x);
      const double angle = bearing + rng.Uniform(-kPi / 3.0, kPi / 3.0);
      const double lo = 0.5 * tx_range;
      const double r = std::sqrt(rng.Uniform(lo * lo, tx_range * tx_range));
      const Point2D cand{prev.x + r * std::cos(angle), prev.y + r * std::sin(angle)};
      if (std::hypot(cand.x, cand.y) > disk_radius) continue;
      AddNode(t, cand, NodeRole::kRelay);
      prev = cand;
    }
  }
  AddUnitDiskLinks(t, tx_range);
  AssignMinHopRoutes(t);
  return t;
}

Topology BuildCentric(const CentricParams& p) {
  Topology t = BuildCanonical(p.canonical);
  double reach = 0.0;
  for (double d : p.canonical.ring_spacings) reach += d;
  if (reach > p.inner_radius) {
    Fail(ErrorCode::kInvalidArgument,
         "canonical core does not fit inside the inner radius");
  }
  for (NodeId i = 0; i < t.size(); ++i) {
    if (i != t.sink) t.roles[i] = NodeRole::kRelay;
  }
  t.links.clear();
  Rng rng(DeriveSeed(p.seed, 0x6f75746572));
  const std::vector<NodeId> outer =
      PlaceOuter(t, rng, p.inner_radius, p.outer_radius, p.n_outer, p.min_sep);
  RepairOuterConnectivity(t, rng, outer, p.inner_radius, p.outer_radius,
                          p.min_sep, p.tx_range);
  AssignMinHopRoutes(t);
  return t;
}

int ManifoldCoreSize(const ManifoldParams& p) {
  return 1 + 3 * p.central_rings + 6 * p.branch_nodes;
}

Topology BuildManifold(const ManifoldParams& p) {
  if (p.central_rings < 1 || p.branch_nodes < 1) {
    Fail(ErrorCode::kInvalidArgument, "manifold needs central rings and branches");
  }
  Topology t = NewWithSink();
  Rng jitter(DeriveSeed(p.seed, 0x6a6974));
  auto jittered = [&](Point2D q) {
    if (p.position_error <= 0.0) return q;
    const double r = p.position_error * p.d0 * std::sqrt(jitter.Uniform());
    const double a = jitter.Uniform(0.0, 2.0 * kPi);
    return Point2D{q.x + r * std::cos(a), q.y + r * std::sin(a)};
  };
  // Branch nodes are spaced evenly so the outermost lands just inside the
  // inner radius.
  const double core_edge = p.inner_radius - 1.0;
  for (int j = 0; j < 3; ++j) {
    const double angle = 2.0 * kPi * j / 3.0;
    double radius = 0.0;
    Point2D split;
    for (int i = 1; i <= p.central_rings; ++i) {
      radius += i == 1 ? p.d0 : (i == 2 ? p.d1 : p.d0);
      split = Polar(radius, angle);
      AddNode(t, jittered(split), NodeRole::kRelay);
    }
    for (int side : {-1, 1}) {
      const double dir = angle + side * p.branch_half_angle;
      const Point2D u{std::cos(dir), std::sin(dir)};
      const double proj = split.x * u.x + split.y * u.y;
      const double r2 = split.x * split.x + split.y * split.y;
      const double reach = -proj + std::sqrt(proj * proj - r2 + core_edge * core_edge);
      if (!(reach > 0.0)) {
        Fail(ErrorCode::kInvalidArgument, "manifold core exceeds inner radius");
      }
      const double step = reach / p.branch_nodes;
      for (int k = 1; k <= p.branch_nodes; ++k) {
        AddNode(t, jittered({split.x + k * step * u.x, split.y + k * step * u.y}),
                NodeRole::kRelay);
      }
    }
  }
  Rng rng(DeriveSeed(p.seed, 0x6f75746572));
  const std::vector<NodeId> outer =
      PlaceOuter(t, rng, p.inner_radius, p.outer_radius, p.n_outer, p.min_sep);
  RepairOuterConnectivity(t, rng, outer, p.inner_radius, p.outer_radius,
                          p.min_sep, p.tx_range);
  AssignMinHopRoutes(t);
  return t;
}

Topology BuildRandomBenchmark(const BenchmarkParams& p) {
  if (p.n_inner < 0) Fail(ErrorCode::kInvalidArgument, "n_inner must be >= 0");
  Topology t = NewWithSink();
  Rng inner_rng(DeriveSeed(p.seed, 0x696e6e6572));
  std::vector<NodeId> inner;
  for (int i = 0; i < p.n_inner; ++i) {
    inner.push_back(AddNode(t, SampleAnnulus(inner_rng, 0.0, p.inner_radius),
                            NodeRole::kRelay));
  }
  Rng rng(DeriveSeed(p.seed, 0x6f75746572));
  const std::vector<NodeId> outer =
      PlaceOuter(t, rng, p.inner_radius, p.outer_radius, p.n_outer, p.min_sep);
  // Inner relays are redrawn too, so sparse inner regions still connect.
  std::vector<NodeId> movable = inner;
  movable.insert(movable.end(), outer.begin(), outer.end());
  const NodeId first_outer = outer.empty() ? static_cast<NodeId>(t.size()) : outer.front();
  RepairConnectivity(t, movable, p.tx_range, [&](NodeId id) {
    if (id < first_outer) {
      t.positions[id] = SampleAnnulus(inner_rng, 0.0, p.inner_radius);
      return;
    }
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100000) {
        Fail(ErrorCode::kInfeasible, "cannot re-place a disconnected node");
      }
      const Point2D q = SampleAnnulus(rng, p.inner_radius, p.outer_radius);
      if (FarFromAll(t, outer, q, p.min_sep, id)) {
        t.positions[id] = q;
        return;
      }
    }
  });
  AssignMinHopRoutes(t);
  return t;
}

Topology BuildHfpExample(double d0, int hops, NodeId* node_a, NodeId* node_b) {
  const CanonicalSpec spec = Fig12Preset(hops, d0);
  Topology t = BuildCanonical(spec);
  // A and B sit at the 2-hop radius, rotated 5 degrees away from chains 0 and
  // 1, and attach to those chains' 1-hop nodes.
  const double r2 = spec.ring_spacings[0] + spec.ring_spacings[1];
  const double tilt = 5.0 * kPi / 180.0;
  const NodeId a_prime = CanonicalNodeId(spec, 0, 1);
  const NodeId b_prime = CanonicalNodeId(spec, 1, 1);
  const NodeId a = AddNode(t, Polar(r2, -tilt), NodeRole::kRelay);
  const NodeId b = AddNode(t, Polar(r2, 2.0 * kPi / 3.0 + tilt), NodeRole::kRelay);
  t.links.push_back({a, a_prime});
  t.links.push_back({b, b_prime});
  AssignMinHopRoutes(t);
  if (node_a) *node_a = a;
  if (node_b) *node_b = b;
  return t;
}

}  // namespace m2o
