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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "m2o/error.hpp"
#include "m2o/geometry.hpp"
#include "m2o/topology.hpp"
#include "oracles.hpp"

using namespace m2o;

namespace {

std::size_t CountRole(const Topology& t, NodeRole r) {
  std::size_t n = 0;
  for (NodeRole x : t.roles) n += x == r;
  return n;
}

double MinPairSeparation(const Topology& t, const std::vector<NodeId>& ids) {
  double m = 1e300;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      m = std::min(m, Distance(t.positions[ids[i]], t.positions[ids[j]]));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("canonical network layout") {
  const Topology t = BuildCanonical(CanonicalSpec::Variable(3, 8, 250, 242, 250));
  CHECK(t.size() == 25);
  CHECK(t.Sources().size() == 3);
  const CanonicalSpec spec = CanonicalSpec::Variable(3, 8, 250, 242, 250);
  for (int c = 0; c < 3; ++c) {
    const double ang = 2 * oracle::kPi * c / 3;
    double r = 0;
    for (int ring = 1; ring <= 8; ++ring) {
      r += spec.ring_spacings[ring - 1];
      const NodeId id = CanonicalNodeId(spec, c, ring);
      CHECK(t.positions[id].x == doctest::Approx(r * std::cos(ang)));
      CHECK(t.positions[id].y == doctest::Approx(r * std::sin(ang)));
      CHECK(t.ring_index[id] == ring);
      CHECK(t.roles[id] == (ring == 8 ? NodeRole::kSource : NodeRole::kRelay));
    }
  }
}

TEST_CASE("single-chain canonical is a straight line") {
  const Topology t = BuildCanonical(CanonicalSpec::EqualLength(1, 4, 250));
  CHECK(t.size() == 5);
  for (NodeId i = 0; i < t.size(); ++i) CHECK(t.positions[i].y == doctest::Approx(0.0));
  CHECK(t.PathOf(4).size() == 5);
}

TEST_CASE("eight-chain three-hop canonical has 25 nodes") {
  const Topology t = BuildCanonical(CanonicalSpec::EqualLength(8, 3, 250));
  CHECK(t.size() == 25);
}

TEST_CASE("canonical rejects coincident nodes and bad specs") {
  CanonicalSpec s = CanonicalSpec::EqualLength(2, 2, 250);
  s.chain_angles = {0.0, 2 * oracle::kPi};
  CHECK_THROWS_AS(BuildCanonical(s), Error);
  CHECK_THROWS_AS(BuildCanonical(CanonicalSpec::EqualLength(0, 2, 250)), Error);
  CHECK_THROWS_AS(BuildCanonical(CanonicalSpec::EqualLength(3, 2, -1)), Error);
}

TEST_CASE("linear chain role policies") {
  const Topology all = BuildLinearChain(2, 250, ChainRoles::kAllSources);
  CHECK(all.size() == 3);
  CHECK(all.Sources().size() == 2);
  const Topology relay = BuildLinearChain(10, 250, ChainRoles::kOutermostOnly);
  CHECK(relay.Sources() == std::vector<NodeId>{10});
  const Topology third = BuildLinearChain(5, 250, ChainRoles::kFromThirdNode);
  CHECK(third.Sources() == std::vector<NodeId>{3, 4, 5});
  CHECK(BuildLinearChain(4, 250, ChainRoles::kAllSources).size() == 5);
}

TEST_CASE("two-chain network scales by similarity") {
  const Topology a = BuildTwoChainAsym(250);
  const Topology b = BuildTwoChainAsym(500);
  REQUIRE(a.size() == b.size());
  for (NodeId i = 0; i < a.size(); ++i) {
    for (NodeId j = 0; j < a.size(); ++j) {
      CHECK(Distance(b.positions[i], b.positions[j]) ==
            doctest::Approx(2 * Distance(a.positions[i], a.positions[j])));
    }
  }
  CHECK_THROWS_AS(BuildTwoChainAsym(250, 0.0), Error);
}

TEST_CASE("random disk: sources at least three hops out, deterministic") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Topology t = BuildRandomDisk(1.0, 0.4, 6, seed);
    CHECK(t.Sources().size() == 6);
    const std::vector<int> hops = oracle::HopsToSink(t);
    for (NodeId s : t.Sources()) {
      CHECK(hops[s] >= 3);
      CHECK(t.ring_index[s] == hops[s]);
      CHECK(static_cast<int>(t.PathOf(s).size()) - 1 == hops[s]);
    }
    for (NodeId n = 0; n < t.size(); ++n) CHECK(t.ring_index[n] == hops[n]);
    for (const auto& l : t.links) CHECK(t.LinkLength(l) <= 0.4 + 1e-12);
    CHECK(SerializeTopology(t) == SerializeTopology(BuildRandomDisk(1.0, 0.4, 6, seed)));
  }
  const Topology one = BuildRandomDisk(1.0, 1.1, 1, 3);
  CHECK(one.ring_index[one.Sources().front()] == 1);
}

TEST_CASE("min-hop routing tie-breaks and errors") {
  // Star of one-hop sources.
  Topology star;
  star.positions = {{0, 0}, {100, 0}, {0, 100}, {-100, 0}};
  star.roles = {NodeRole::kSink, NodeRole::kSource, NodeRole::kSource, NodeRole::kSource};
  star.sink = 0;
  AddUnitDiskLinks(star, 150);
  AssignMinHopRoutes(star);
  for (NodeId s : star.Sources()) CHECK(star.next_hop[s] == 0);

  // Two equal-hop candidates: the one nearer the sink wins.
  Topology tie;
  tie.positions = {{0, 0}, {200, 10}, {190, -5}, {390, 0}};
  tie.roles = {NodeRole::kSink, NodeRole::kRelay, NodeRole::kRelay, NodeRole::kSource};
  tie.sink = 0;
  AddUnitDiskLinks(tie, 210);
  AssignMinHopRoutes(tie);
  CHECK(tie.next_hop[3] == 2);

  Topology cut = star;
  cut.positions.push_back({5000, 0});
  cut.roles.push_back(NodeRole::kSource);
  cut.links.clear();
  AddUnitDiskLinks(cut, 150);
  try {
    AssignMinHopRoutes(cut);
    FAIL("expected unreachable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnreachable);
    CHECK(std::string(e.what()).find('4') != std::string::npos);
  }
}

TEST_CASE("centric network: core, separation, routes") {
  CentricParams p;
  p.n_outer = 71;
  p.outer_radius = 1311;
  p.seed = 5;
  const Topology t = BuildCentric(p);
  CHECK(t.size() == 1 + 15 + 71);
  std::vector<NodeId> outer;
  for (NodeId i = 16; i < t.size(); ++i) outer.push_back(i);
  CHECK(MinPairSeparation(t, outer) >= 125.0);
  for (NodeId i : outer) {
    const double r = std::hypot(t.positions[i].x, t.positions[i].y);
    CHECK(r >= 980.0 - 1e-9);
    CHECK(r <= 1311.0 + 1e-9);
    CHECK(t.roles[i] == NodeRole::kSourceAndRelay);
    CHECK(t.ring_index[i] > 0);
  }
  CHECK_NOTHROW(t.Validate());
  CHECK(SerializeTopology(t) == SerializeTopology(BuildCentric(p)));

  CentricParams bare;
  bare.n_outer = 0;
  const Topology c = BuildCentric(bare);
  CHECK(c.size() == 16);
}

TEST_CASE("centric reports infeasible separation") {
  CentricParams p;
  p.outer_radius = 1000;
  p.n_outer = 500;
  try {
    BuildCentric(p);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasible);
  }
}

TEST_CASE("manifold network has a 31-node core") {
  ManifoldParams p;
  CHECK(ManifoldCoreSize(p) == 31);
  p.seed = 7;
  const Topology t = BuildManifold(p);
  CHECK(t.size() == 31 + 269);
  std::vector<NodeId> outer;
  for (NodeId i = 31; i < t.size(); ++i) outer.push_back(i);
  CHECK(MinPairSeparation(t, outer) >= 125.0);
  for (NodeId i = 1; i < 31; ++i) {
    CHECK(std::hypot(t.positions[i].x, t.positions[i].y) < 1026.0);
    CHECK(t.roles[i] == NodeRole::kRelay);
  }
  CHECK(CountRole(t, NodeRole::kSink) == 1);

  ManifoldParams bare;
  bare.n_outer = 0;
  CHECK(BuildManifold(bare).size() == 31);

  ManifoldParams jit = p;
  jit.position_error = 0.05;
  const Topology j = BuildManifold(jit);
  CHECK_NOTHROW(j.Validate());
  double max_shift = 0;
  for (NodeId i = 1; i < 31; ++i) {
    max_shift = std::max(max_shift, Distance(j.positions[i], t.positions[i]));
  }
  CHECK(max_shift > 0.0);
  CHECK(max_shift <= 0.05 * p.d0 + 1e-9);
}

TEST_CASE("benchmark network fills the inner disk randomly") {
  BenchmarkParams p;
  p.n_outer = 71;
  p.outer_radius = 1311;
  const Topology t = BuildRandomBenchmark(p);
  CHECK(t.size() == 1 + 146 + 71);
  for (NodeId i = 1; i <= 146; ++i) {
    CHECK(std::hypot(t.positions[i].x, t.positions[i].y) <= 980.0);
  }
  for (NodeId s : t.Sources()) CHECK(t.ring_index[s] > 0);
}

TEST_CASE("topology text round-trips exactly") {
  const Topology t = BuildRandomDisk(1.0, 0.4, 6, 4);
  const std::string text = SerializeTopology(t);
  CHECK(text.rfind("topology v1\n", 0) == 0);
  const Topology u = ParseTopology(text);
  CHECK(SerializeTopology(u) == text);
  CHECK(u.links == t.links);
  CHECK(u.next_hop == t.next_hop);
  CHECK(u.ring_index == t.ring_index);

  const Topology c = BuildCanonical(Table1Preset());
  CHECK(SerializeTopology(ParseTopology(SerializeTopology(c))) == SerializeTopology(c));
}

TEST_CASE("topology parse errors") {
  auto code = [](const std::string& text) {
    try {
      ParseTopology(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code("nope\n") == ErrorCode::kParse);
  CHECK(code("topology v1\nnode 0 0 0 sink\nnode 2 1 1 source\n") == ErrorCode::kParse);
  CHECK(code("topology v1\nnode 0 0 0 sink\nnode 1 1 0 wizard\n") == ErrorCode::kParse);
  CHECK(code("topology v1\nnode 0 0 0 relay\n") != ErrorCode::kInternal);
  try {
    ReadTopologyFile("/nonexistent/file");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("routes are acyclic and end at the sink") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Topology t = BuildRandomDisk(1.0, 0.4, 6, seed);
    for (NodeId s : t.Sources()) {
      std::set<NodeId> seen;
      for (NodeId n : t.PathOf(s)) CHECK(seen.insert(n).second);
      CHECK(t.PathOf(s).back() == t.sink);
    }
  }
}
