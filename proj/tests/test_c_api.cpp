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
#include <cstdint>
#include <string>
#include <vector>

#include "m2o/m2o.h"

namespace {

m2o_radio_config Radio(double cs) {
  m2o_radio_config c;
  m2o_radio_config_default(&c);
  c.cs_range = cs;
  return c;
}

m2o_topology* Fig12Like() {
  // 3 chains at 120 degrees, 2 hops each.
  const double spacings[2] = {250.0, 250.0 * 0.973};
  m2o_topology* t = nullptr;
  REQUIRE(m2o_topology_canonical(3, spacings, 2, &t) == M2O_OK);
  return t;
}

}  // namespace

TEST_CASE("status names and defaults") {
  CHECK(std::string(m2o_status_name(M2O_OK)) == "ok");
  CHECK(std::string(m2o_status_name(M2O_ERR_PARSE)) == "parse");
  m2o_radio_config c;
  m2o_radio_config_default(&c);
  CHECK(c.tx_range == 250.0);
  CHECK(c.delta == doctest::Approx(0.78));
  CHECK(c.rs_mode == 1);
  m2o_mac_params m;
  m2o_mac_params_default(&m);
  CHECK(m.cw_min == 31);
  double delta = 0;
  CHECK(m2o_delta_margin(10.0, 4.0, &delta) == M2O_OK);
  CHECK(delta == doctest::Approx(std::pow(10.0, 0.25) - 1.0));
}

TEST_CASE("errors carry a status and a message") {
  m2o_topology* t = nullptr;
  CHECK(m2o_topology_linear_chain(0, 250, M2O_CHAIN_ALL_SOURCES, &t) ==
        M2O_ERR_INVALID_ARGUMENT);
  CHECK(t == nullptr);
  CHECK(std::string(m2o_last_error()).size() > 0);
  CHECK(m2o_topology_parse("not a topology", &t) == M2O_ERR_PARSE);
  CHECK(m2o_topology_read_file("/nonexistent/dir/x.topo", &t) == M2O_ERR_IO);
  double v = 0;
  CHECK(m2o_chain_capacity(5, &v) == M2O_OK);
  CHECK(std::string(m2o_last_error()).empty());
  CHECK(m2o_chain_capacity(1, &v) != M2O_OK);
  CHECK(m2o_chain_capacity(5, nullptr) == M2O_ERR_INVALID_ARGUMENT);
  m2o_mode mode;
  CHECK(m2o_mode_parse("aggregate", &mode) == M2O_OK);
  CHECK(mode == M2O_MODE_AGGREGATE);
  CHECK(m2o_mode_parse("loud", &mode) == M2O_ERR_INVALID_ARGUMENT);
}

TEST_CASE("topology handles round-trip through text") {
  m2o_topology* t = Fig12Like();
  CHECK(m2o_topology_node_count(t) == 7);
  CHECK(m2o_topology_sink(t) == 0);
  char* text = nullptr;
  REQUIRE(m2o_topology_serialize(t, &text) == M2O_OK);
  m2o_topology* back = nullptr;
  REQUIRE(m2o_topology_parse(text, &back) == M2O_OK);
  char* text2 = nullptr;
  REQUIRE(m2o_topology_serialize(back, &text2) == M2O_OK);
  CHECK(std::string(text) == std::string(text2));
  m2o_string_free(text);
  m2o_string_free(text2);

  size_t n = 0;
  CHECK(m2o_topology_sources(t, nullptr, 0, &n) == M2O_OK);
  CHECK(n == 3);
  std::vector<uint32_t> ids(n);
  CHECK(m2o_topology_sources(t, ids.data(), ids.size(), &n) == M2O_OK);
  uint32_t hop = 0;
  CHECK(m2o_topology_next_hop(t, ids[0], &hop) == M2O_OK);
  int ring = 0;
  CHECK(m2o_topology_ring(t, hop, &ring) == M2O_OK);
  CHECK(m2o_topology_node(t, 999, nullptr, nullptr, nullptr) != M2O_OK);
  m2o_topology_free(back);
  m2o_topology_free(t);
  m2o_topology_free(nullptr);
}

TEST_CASE("capacity and schedules through the handle layer") {
  m2o_topology* t = Fig12Like();
  const m2o_radio_config c = Radio(2.7 * 250);
  m2o_capacity_report r;
  REQUIRE(m2o_upper_bound(t, &c, &r) == M2O_OK);
  CHECK(r.bound_fraction == doctest::Approx(0.75));
  CHECK(r.ring2_concurrency == 3);

  m2o_schedule* s = nullptr;
  REQUIRE(m2o_schedule_fig12(2, &s) == M2O_OK);
  CHECK(m2o_schedule_frame_slots(s) == 4);
  size_t count = 99;
  CHECK(m2o_verify_schedule(t, s, &c, M2O_MODE_PAIRWISE, nullptr, 0, &count) == M2O_OK);
  CHECK(count == 0);
  const m2o_radio_config wide = Radio(3.5 * 250);
  std::vector<m2o_violation> v(16);
  CHECK(m2o_verify_schedule(t, s, &wide, M2O_MODE_PAIRWISE, v.data(), v.size(), &count) ==
        M2O_OK);
  REQUIRE(count > 0);
  CHECK(std::string(v[0].kind) == "senses");
  double agg = 0, per = 0;
  CHECK(m2o_schedule_throughput(t, s, &c, &agg, &per) == M2O_OK);
  CHECK(agg == doctest::Approx(0.75 * c.link_capacity));
  CHECK(per * 3 == doctest::Approx(agg));
  m2o_schedule_free(s);

  double hfd = 0;
  CHECK(m2o_min_hfd_csrange(t, nullptr, 0, &c, &hfd) == M2O_OK);
  CHECK(hfd > 2.62 * 250);
  m2o_radio_config no_rs = c;
  no_rs.rs_mode = 0;
  CHECK(m2o_min_hfd_csrange(t, nullptr, 0, &no_rs, &hfd) != M2O_OK);
  m2o_topology_free(t);
}

TEST_CASE("simulation and sweeps through the handle layer") {
  m2o_topology* t = nullptr;
  REQUIRE(m2o_topology_linear_chain(3, 250, M2O_CHAIN_OUTERMOST_ONLY, &t) == M2O_OK);
  const m2o_radio_config c = Radio(550);
  m2o_mac_params mac;
  m2o_mac_params_default(&mac);
  m2o_traffic tr;
  m2o_traffic_default(&tr);
  tr.offered_load_bps = 5e5;
  m2o_sim_options o;
  m2o_sim_options_default(&o);
  o.duration_s = 2;
  m2o_sim_result r;
  REQUIRE(m2o_simulate(t, &c, &mac, &tr, &o, &r) == M2O_OK);
  CHECK(r.generated == r.delivered + r.dropped_queue + r.dropped_retry + r.queued_at_end);
  CHECK(r.aggregate_throughput_bps > 0);
  const double loads[3] = {1e5, 1e6, 3e6};
  std::vector<m2o_sweep_point> pts(5);
  size_t n = 0, best = 0;
  REQUIRE(m2o_sweep_load(t, &c, &mac, &tr, loads, 3, 2, &o, pts.data(), &n, &best) ==
          M2O_OK);
  CHECK(n == 5);
  CHECK(best < n);
  tr.offered_load_bps = -1;
  CHECK(m2o_simulate(t, &c, &mac, &tr, &o, &r) == M2O_ERR_INVALID_ARGUMENT);
  m2o_topology_free(t);
}

TEST_CASE("path selection handles") {
  m2o_topology* t = nullptr;
  uint32_t a = 0, b = 0;
  REQUIRE(m2o_topology_hfp_example(250, 2, &t, &a, &b) == M2O_OK);
  m2o_radio_config c;
  m2o_radio_config_default(&c);
  m2o_selection* s2 = nullptr;
  m2o_selection* s3 = nullptr;
  REQUIRE(m2o_hfp_select(t, &c, M2O_SCHEME_MIN_HFD_ALL_LINKS, 0, &s2) == M2O_OK);
  REQUIRE(m2o_hfp_select(t, &c, M2O_SCHEME_HFP_SUBSET, 0, &s3) == M2O_OK);
  CHECK(m2o_selection_cs_range(s3) < m2o_selection_cs_range(s2));
  CHECK(m2o_selection_objective(s3) == doctest::Approx(0.75));
  CHECK(m2o_selection_path_count(s3) == 3);
  char* text = nullptr;
  REQUIRE(m2o_selection_serialize(s3, &text) == M2O_OK);
  CHECK(std::string(text).rfind("scheme hfp_subset", 0) == 0);
  m2o_string_free(text);
  m2o_topology* applied = nullptr;
  REQUIRE(m2o_selection_apply(t, s3, &applied) == M2O_OK);
  CHECK(m2o_topology_link_count(applied) == m2o_selection_link_count(s3));
  m2o_topology_free(applied);
  m2o_selection_free(s2);
  m2o_selection_free(s3);
  m2o_topology_free(t);
}
