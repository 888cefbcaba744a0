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

#include <algorithm>
#include <cstdio>

#include "m2o/conflict.hpp"
#include "m2o/error.hpp"
#include "m2o/simulator.hpp"
#include "m2o/topology.hpp"

using namespace m2o;

namespace {

RadioConfig HfdCfg(const Topology& t) {
  RadioConfig c;
  c.cs_range = std::max(MinHfdCsRange(t, t.RouteLinks(), c), c.tx_range);
  return c;
}

SimOptions Short(double s, std::uint64_t seed = 1) {
  SimOptions o;
  o.duration_s = s;
  o.seed = seed;
  return o;
}

TrafficSpec Load(double bps, ArrivalProcess a = ArrivalProcess::kCbr) {
  TrafficSpec tr;
  tr.offered_load_bps = bps;
  tr.arrival = a;
  return tr;
}

// Saturated single-link rate from the mean DCF cycle: DIFS, mean backoff,
// DATA, SIFS, ACK.
double LinkRateOracle(const MacParams& m) {
  const double data_us = m.phy_header_us + (m.payload_bytes + m.overhead_bytes) * 8.0 /
                                               m.data_rate_bps * 1e6;
  const double cycle_us = m.difs_us + m.cw_min / 2.0 * m.slot_time_us + data_us +
                          m.sifs_us + m.ack_time_us;
  return m.payload_bytes * 8.0 / (cycle_us * 1e-6);
}

}  // namespace

TEST_CASE("single link capacity matches the mean DCF cycle") {
  const MacParams mac;
  const double l = MeasureLinkCapacity(RadioConfig{}, mac, Short(20));
  CHECK(l == doctest::Approx(LinkRateOracle(mac)).epsilon(0.02));
  CHECK(l > 5.5e6);
  CHECK(l < 6.5e6);
}

TEST_CASE("same seed gives the same run") {
  const Topology t = BuildCanonical(CanonicalSpec::EqualLength(3, 3, 250));
  const RadioConfig c = HfdCfg(t);
  for (ArrivalProcess a : {ArrivalProcess::kCbr, ArrivalProcess::kPoisson}) {
    const SimResult r1 = Simulate(t, c, MacParams{}, Load(1.2e6, a), Short(3, 9));
    const SimResult r2 = Simulate(t, c, MacParams{}, Load(1.2e6, a), Short(3, 9));
    CHECK(r1.aggregate_throughput_bps == r2.aggregate_throughput_bps);
    CHECK(r1.per_flow_throughput_bps == r2.per_flow_throughput_bps);
    CHECK(r1.collisions_countdown == r2.collisions_countdown);
    CHECK(r1.generated == r2.generated);
  }
}

TEST_CASE("packets are conserved") {
  const Topology t = BuildCanonical(CanonicalSpec::EqualLength(4, 3, 250));
  const RadioConfig c = HfdCfg(t);
  for (double load : {2e5, 1e6, 5e6}) {
    for (ArrivalProcess a :
         {ArrivalProcess::kCbr, ArrivalProcess::kPoisson, ArrivalProcess::kSaturated}) {
      const SimResult r = Simulate(t, c, MacParams{}, Load(load, a), Short(2));
      CHECK(r.generated == r.delivered + r.dropped_queue + r.dropped_retry + r.queued_at_end);
      CHECK(r.aggregate_throughput_bps >= 0.0);
    }
  }
}

TEST_CASE("hidden-node collisions vanish at a hidden-node-free sensing range") {
  const Topology t = BuildTwoChainAsym(250);
  const SimResult hfd = Simulate(t, HfdCfg(t), MacParams{}, Load(2e6), Short(5));
  CHECK(hfd.collisions_hidden_node == 0);
  RadioConfig narrow;
  narrow.cs_range = narrow.tx_range;
  const SimResult hn = Simulate(t, narrow, MacParams{}, Load(2e6), Short(5));
  CHECK(hn.collisions_hidden_node > 0);
  CHECK(hn.aggregate_throughput_bps < hfd.aggregate_throughput_bps);
}

TEST_CASE("throughput tracks light offered load") {
  const Topology t = BuildCanonical(CanonicalSpec::EqualLength(3, 3, 250));
  const double load = 1e5;
  const SimResult r = Simulate(t, HfdCfg(t), MacParams{}, Load(load), Short(10));
  CHECK(r.aggregate_throughput_bps ==
        doctest::Approx(load * static_cast<double>(t.Sources().size())).epsilon(0.05));
  CHECK(r.dropped_queue == 0);
}

TEST_CASE("symmetric network shares fairly") {
  const Topology t = BuildCanonical(CanonicalSpec::EqualLength(4, 3, 250));
  const SimResult r = Simulate(t, HfdCfg(t), MacParams{}, Load(2e5), Short(10));
  double lo = 1e300, hi = 0;
  for (const auto& [s, v] : r.per_flow_throughput_bps) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  REQUIRE(lo > 0);
  CHECK(hi / lo <= 1.5);
}

TEST_CASE("aggregate interference only removes packets") {
  const Topology t = BuildCanonical(CanonicalSpec::EqualLength(3, 3, 250));
  const RadioConfig c = HfdCfg(t);
  SimOptions pair = Short(5), agg = Short(5);
  agg.mode = InterferenceMode::kAggregate;
  const SimResult rp = Simulate(t, c, MacParams{}, Load(1.5e6), pair);
  const SimResult ra = Simulate(t, c, MacParams{}, Load(1.5e6), agg);
  CHECK(ra.aggregate_throughput_bps <= rp.aggregate_throughput_bps * 1.02);
  CHECK(ra.aggregate_throughput_bps >= rp.aggregate_throughput_bps * 0.9);
}

TEST_CASE("load sweeps") {
  const Topology t = BuildCanonical(CanonicalSpec::EqualLength(3, 2, 250));
  const RadioConfig c = HfdCfg(t);
  const SweepResult one = SweepLoad(t, c, MacParams{}, TrafficSpec{}, {1e6}, Short(2));
  REQUIRE(one.curve.size() == 1);
  CHECK(one.best_index == 0);
  const std::vector<double> grid = DefaultLoadGrid(6e6, 3, 6);
  REQUIRE(grid.size() == 6);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  const SweepResult coarse = SweepLoad(t, c, MacParams{}, TrafficSpec{}, grid, Short(2));
  const SweepResult fine =
      SweepLoadRefined(t, c, MacParams{}, TrafficSpec{}, grid, 4, Short(2));
  CHECK(fine.curve.size() == grid.size() + 4);
  CHECK(fine.best().result.aggregate_throughput_bps >=
        coarse.best().result.aggregate_throughput_bps);
  for (const auto& p : coarse.curve) {
    CHECK(p.result.aggregate_throughput_bps <=
          coarse.best().result.aggregate_throughput_bps);
  }
  const std::vector<double> g = GeometricGrid(1e3, 1e6, 4);
  REQUIRE(g.size() == 4);
  CHECK(g.front() == doctest::Approx(1e3));
  CHECK(g[1] == doctest::Approx(1e4));
  CHECK(g.back() == doctest::Approx(1e6));
}

TEST_CASE("sensing-range sweep marks hidden-node-free rows") {
  const Topology t = BuildTwoChainAsym(250);
  RadioConfig c;
  const auto rows = CsRangeSweep(t, c, MacParams{}, TrafficSpec{}, {300, 750},
                                 {1e6, 2e6}, Short(1));
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].hfd);
  CHECK(rows[1].hfd);
}

TEST_CASE("csv layout") {
  CHECK(CsvHeader() ==
        "csrange,offered_load,throughput_bps,throughput_over_L,hn_collisions,"
        "countdown_collisions\n");
  SimResult r;
  r.aggregate_throughput_bps = 3e6;
  r.collisions_hidden_node = 4;
  r.collisions_countdown = 7;
  CHECK(CsvRow(550, 1e6, r, 6e6) ==
        "550.000000,1000000.000000,3000000.000000,0.500000,4,7\n");
}

TEST_CASE("parameter validation") {
  const Topology t = BuildLinearChain(3, 250, ChainRoles::kOutermostOnly);
  RadioConfig c;
  MacParams bad_mac;
  bad_mac.cw_max = 1;
  CHECK_THROWS_AS(Simulate(t, c, bad_mac, Load(1e5), Short(1)), Error);
  CHECK_THROWS_AS(Simulate(t, c, MacParams{}, Load(-1), Short(1)), Error);
  CHECK_THROWS_AS(Simulate(t, c, MacParams{}, Load(1e5), Short(0)), Error);
  TrafficSpec q = Load(1e5);
  q.queue_capacity = 0;
  CHECK_THROWS_AS(Simulate(t, c, MacParams{}, q, Short(1)), Error);
  CHECK(ParseArrival("poisson") == ArrivalProcess::kPoisson);
  CHECK_THROWS_AS(ParseArrival("bursty"), Error);
}
