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
#include <map>

#include "m2o/capacity.hpp"
#include "m2o/conflict.hpp"
#include "m2o/error.hpp"
#include "m2o/topology.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace m2o;

namespace {

RadioConfig Cfg(double cs, double tx = 250.0) {
  RadioConfig c;
  c.tx_range = tx;
  c.cs_range = cs;
  return c;
}

RadioConfig HfdCfg(const Topology& t) {
  RadioConfig c;
  c.cs_range = std::max(MinHfdCsRange(t, t.RouteLinks(), c), c.tx_range);
  return c;
}

// Largest number of 2-hop route links active in one slot.
int SlotRing2Max(const Topology& t, const Schedule& s) {
  int k = 0;
  for (const auto& slot : s.slots) {
    int n = 0;
    for (const auto& l : slot) n += t.ring_index[l.tx] == 2;
    k = std::max(k, n);
  }
  return k;
}

}  // namespace

TEST_CASE("upper bound examples") {
  for (int n : {2, 4, 5, 6, 7, 8}) {
    const Topology t = BuildCanonical(CanonicalSpec::EqualLength(n, 4, 250));
    const CapacityReport r = UpperBound(t, HfdCfg(t));
    CHECK(r.ring2_concurrency == 2);
    CHECK(r.bound_fraction == doctest::Approx(2.0 / 3.0));
    CHECK(r.equal_length);
  }
  const Topology f12 = BuildCanonical(Fig12Preset(2));
  const CapacityReport r = UpperBound(f12, Cfg(2.7 * 250));
  CHECK(r.bound_fraction == doctest::Approx(0.75));
  CHECK_FALSE(r.equal_length);
  const Topology chain = BuildLinearChain(4, 250, ChainRoles::kOutermostOnly);
  CHECK(UpperBound(chain, Cfg(550)).bound_fraction == doctest::Approx(0.5));
}

TEST_CASE("upper bound rejects one-hop sources") {
  const Topology t = BuildLinearChain(3, 250, ChainRoles::kAllSources);
  try {
    UpperBound(t, Cfg(550));
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
  }
}

TEST_CASE("bent equal-length chains keep the two-thirds bound") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Topology t = fixture::BentChains(seed);
    const CapacityReport r = UpperBound(t, HfdCfg(t));
    CHECK(r.ring2_concurrency == oracle::MaxConcurrentBrute(t, t.RouteLinks(), 2, 0.78));
    CHECK(r.bound_fraction == doctest::Approx(2.0 / 3.0));
  }
}

TEST_CASE("chain capacity formula") {
  CHECK(ChainCapacity(2) == doctest::Approx(2.0 / 3.0));
  CHECK(ChainCapacity(10) == doctest::Approx(10.0 / 27.0));
  CHECK(std::abs(ChainCapacity(10000) - 1.0 / 3.0) < 1e-4);
  CHECK_THROWS_AS(ChainCapacity(1), Error);
}

TEST_CASE("two-chain schedule verifies and reaches two thirds") {
  const double d = 250;
  const Topology t = BuildTwoChainAsym(d);
  const Schedule s = Fig9Schedule(7);
  const RadioConfig c = Cfg(2.9 * d);
  CHECK(VerifySchedule(t, s, c, InterferenceMode::kPairwise).empty());
  const ScheduleThroughput st = ComputeScheduleThroughput(t, s, c);
  CHECK(st.aggregate == doctest::Approx(2.0 / 3.0));
  CHECK(st.aggregate == doctest::Approx(oracle::EqualRateAggregate(t, s.Airtime(), 1.0)));
  CHECK(s.frame_slots() == 3);
  // One-hop links never share a slot.
  for (const auto& slot : s.slots) {
    int one_hop = 0;
    for (const auto& l : slot) one_hop += l.rx == t.sink;
    CHECK(one_hop <= 1);
  }
}

TEST_CASE("three-chain schedule reaches three quarters inside its sensing window") {
  const double d0 = 250;
  const Topology t = BuildCanonical(Fig12Preset(2, d0));
  const Schedule s = Fig12Schedule(2);
  for (double f : {2.63, 2.7, 3.0, 3.41}) {
    INFO("cs/d0 = " << f);
    CHECK(VerifySchedule(t, s, Cfg(f * d0), InterferenceMode::kPairwise).empty());
  }
  const auto bad = VerifySchedule(t, s, Cfg(3.5 * d0), InterferenceMode::kPairwise);
  REQUIRE_FALSE(bad.empty());
  for (const auto& v : bad) CHECK(v.kind == "senses");
  const ScheduleThroughput st = ComputeScheduleThroughput(t, s, Cfg(2.7 * d0));
  CHECK(st.aggregate == doctest::Approx(0.75));
  // With three nodes per chain the three 2-hop links share one slot.
  int together = 0;
  for (const auto& slot : s.slots) {
    int n = 0;
    for (const auto& l : slot) n += t.ring_index[l.tx] == 2;
    together = std::max(together, n);
  }
  CHECK(together == 3);
}

TEST_CASE("empty schedule and unknown links") {
  const Topology t = BuildCanonical(Fig12Preset(2));
  CHECK(VerifySchedule(t, Schedule{}, Cfg(675), InterferenceMode::kPairwise).empty());
  Schedule s;
  s.slots = {{{1, 5}}};
  const auto v = VerifySchedule(t, s, Cfg(675), InterferenceMode::kPairwise);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == "unknown_link");
}

TEST_CASE("relay-only airtime sustains no flow") {
  const Topology t = BuildLinearChain(10, 250, ChainRoles::kOutermostOnly);
  Schedule s;
  s.slots = {{{1, 0}}, {{1, 0}}, {{1, 0}}};
  CHECK(ComputeScheduleThroughput(t, s, Cfg(550)).aggregate == doctest::Approx(0.0));
}

TEST_CASE("chain reuse schedule matches the chain formula") {
  const double d = 250;
  for (int n : {2, 4, 10}) {
    const Topology t = BuildLinearChain(n, d, ChainRoles::kAllSources);
    const Schedule s = ChainSchedule(n);
    const RadioConfig c = Cfg(2.5 * d);
    CHECK(VerifySchedule(t, s, c, InterferenceMode::kPairwise).empty());
    const ScheduleThroughput st = ComputeScheduleThroughput(t, s, c);
    CHECK(st.aggregate == doctest::Approx(ChainCapacity(n)));
    CHECK(st.aggregate == doctest::Approx(oracle::EqualRateAggregate(t, s.Airtime(), 1.0)));
  }
}

TEST_CASE("repeating a frame keeps airtimes") {
  const Schedule s = Fig12Schedule(4);
  const Schedule r = s.Repeated(2);
  CHECK(r.frame_slots() == 2 * s.frame_slots());
  CHECK(r.Airtime() == s.Airtime());
}

TEST_CASE("verified schedules respect the ring counting identity and the bound") {
  struct Case {
    Topology t;
    Schedule s;
    double cs;
  };
  std::vector<Case> cases;
  cases.push_back({BuildTwoChainAsym(250), Fig9Schedule(7), 2.9 * 250});
  for (int h : {2, 3, 5}) {
    cases.push_back({BuildCanonical(Fig12Preset(h)), Fig12Schedule(h), 2.7 * 250});
  }
  for (const Case& c : cases) {
    const RadioConfig cfg = Cfg(c.cs);
    REQUIRE(VerifySchedule(c.t, c.s, cfg, InterferenceMode::kPairwise).empty());
    const auto air = c.s.Airtime();
    double x1 = 0, x2 = 0;
    for (const auto& [l, a] : air) {
      if (c.t.ring_index[l.tx] == 1) x1 += a;
      if (c.t.ring_index[l.tx] == 2) x2 += a;
    }
    const int k = SlotRing2Max(c.t, c.s);
    CHECK(x1 + x2 / k <= 1.0 + 1e-12);
    const double bound = UpperBound(c.t, cfg).bound_fraction;
    CHECK(ComputeScheduleThroughput(c.t, c.s, cfg).aggregate <= bound + 1e-12);
  }
}

TEST_CASE("schedule flows are conserved at every relay") {
  const Topology t = BuildCanonical(Fig12Preset(5));
  const ScheduleThroughput st = ComputeScheduleThroughput(t, Fig12Schedule(5), Cfg(675));
  std::map<NodeId, double> in, out;
  for (const auto& [l, f] : st.link_flow) {
    out[l.tx] += f;
    in[l.rx] += f;
  }
  for (NodeId n = 0; n < t.size(); ++n) {
    if (n == t.sink) continue;
    const double own = GeneratesTraffic(t.roles[n]) ? st.per_source_rate : 0.0;
    CHECK(out[n] == doctest::Approx(in[n] + own));
  }
  CHECK(in[t.sink] == doctest::Approx(st.aggregate));
}

TEST_CASE("aggregate mode catches summed interference") {
  // Three compatible interferers 1.9 link lengths from the victim receiver.
  Topology t;
  t.positions = {{-1, 0}, {0, 0}};
  t.roles = {NodeRole::kSource, NodeRole::kSink};
  t.sink = 1;
  t.links = {{0, 1}};
  for (double deg : {-60.0, 0.0, 60.0}) {
    const double a = deg * oracle::kPi / 180;
    const auto tx = static_cast<NodeId>(t.positions.size());
    t.positions.push_back({1.9 * std::cos(a), 1.9 * std::sin(a)});
    t.positions.push_back({2.9 * std::cos(a), 2.9 * std::sin(a)});
    t.roles.push_back(NodeRole::kSource);
    t.roles.push_back(NodeRole::kRelay);
    t.links.push_back({tx, tx + 1});
  }
  Schedule s;
  s.slots = {t.links};
  const RadioConfig c = Cfg(1.5, 1.0);
  CHECK(VerifySchedule(t, s, c, InterferenceMode::kPairwise).empty());
  const auto v = VerifySchedule(t, s, c, InterferenceMode::kAggregate);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].kind == "low_sir");
}

TEST_CASE("schedule text round-trips") {
  const Schedule s = Fig12Schedule(3);
  const std::string text = SerializeSchedule(s);
  CHECK(text.find("slot 1: ") != std::string::npos);
  CHECK(SerializeSchedule(ParseSchedule(text)) == text);
  CHECK_THROWS_AS(ParseSchedule("slot x: 1-2\n"), Error);
  CHECK(ParseInterferenceMode("aggregate") == InterferenceMode::kAggregate);
  CHECK_THROWS_AS(ParseInterferenceMode("psychic"), Error);
}
