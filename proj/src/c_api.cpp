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


#include "m2o/m2o.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "m2o/capacity.hpp"
#include "m2o/conflict.hpp"
#include "m2o/error.hpp"
#include "m2o/geometry.hpp"
#include "m2o/hfp.hpp"
#include "m2o/simulator.hpp"
#include "m2o/topology.hpp"

struct m2o_topology {
  m2o::Topology value;
};
struct m2o_schedule {
  m2o::Schedule value;
};
struct m2o_selection {
  m2o::PathSelection value;
};

namespace {

thread_local std::string g_last_error;

m2o_status SetError(m2o_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
m2o_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return M2O_OK;
  } catch (const m2o::Error& e) {
    return SetError(static_cast<m2o_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(M2O_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(M2O_ERR_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) m2o::Fail(m2o::ErrorCode::kInvalidArgument, what);
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

m2o::RadioConfig ToCpp(const m2o_radio_config* c) {
  Require(c != nullptr, "radio config is null");
  m2o::RadioConfig r;
  r.tx_range = c->tx_range;
  r.cs_range = c->cs_range;
  r.path_loss_exp = c->path_loss_exp;
  r.sir_threshold = c->sir_threshold;
  r.delta = c->delta;
  r.capture_ratio = c->capture_ratio;
  r.rs_mode = c->rs_mode != 0;
  r.tx_power = c->tx_power;
  r.link_capacity = c->link_capacity;
  r.Validate();
  return r;
}

m2o::MacParams ToCpp(const m2o_mac_params* m) {
  Require(m != nullptr, "mac params are null");
  m2o::MacParams r;
  r.slot_time_us = m->slot_time_us;
  r.sifs_us = m->sifs_us;
  r.difs_us = m->difs_us;
  r.cw_min = m->cw_min;
  r.cw_max = m->cw_max;
  r.data_rate_bps = m->data_rate_bps;
  r.phy_header_us = m->phy_header_us;
  r.ack_time_us = m->ack_time_us;
  r.payload_bytes = m->payload_bytes;
  r.overhead_bytes = m->overhead_bytes;
  r.retry_limit = m->retry_limit;
  r.Validate();
  return r;
}

m2o::InterferenceMode ToCpp(m2o_mode mode) {
  switch (mode) {
    case M2O_MODE_PAIRWISE: return m2o::InterferenceMode::kPairwise;
    case M2O_MODE_AGGREGATE: return m2o::InterferenceMode::kAggregate;
  }
  m2o::Fail(m2o::ErrorCode::kInvalidArgument, "unknown interference mode");
}

m2o::TrafficSpec ToCpp(const m2o_traffic* t) {
  Require(t != nullptr, "traffic is null");
  m2o::TrafficSpec r;
  r.offered_load_bps = t->offered_load_bps;
  switch (t->arrival) {
    case M2O_ARRIVAL_CBR: r.arrival = m2o::ArrivalProcess::kCbr; break;
    case M2O_ARRIVAL_POISSON: r.arrival = m2o::ArrivalProcess::kPoisson; break;
    case M2O_ARRIVAL_SATURATED: r.arrival = m2o::ArrivalProcess::kSaturated; break;
    default: m2o::Fail(m2o::ErrorCode::kInvalidArgument, "unknown arrival process");
  }
  r.queue_capacity = t->queue_capacity;
  r.Validate();
  return r;
}

m2o::SimOptions ToCpp(const m2o_sim_options* o) {
  Require(o != nullptr, "sim options are null");
  m2o::SimOptions r;
  r.duration_s = o->duration_s;
  r.warmup_fraction = o->warmup_fraction;
  r.seed = o->seed;
  r.mode = ToCpp(o->mode);
  r.Validate();
  return r;
}

m2o_link ToC(const m2o::DirectedLink& l) { return m2o_link{l.tx, l.rx}; }

m2o_sim_result ToC(const m2o::SimResult& r) {
  m2o_sim_result out{};
  out.aggregate_throughput_bps = r.aggregate_throughput_bps;
  out.collisions_hidden_node = r.collisions_hidden_node;
  out.collisions_countdown = r.collisions_countdown;
  out.sim_duration_s = r.sim_duration_s;
  out.measured_s = r.measured_s;
  out.generated = r.generated;
  out.delivered = r.delivered;
  out.dropped_queue = r.dropped_queue;
  out.dropped_retry = r.dropped_retry;
  out.queued_at_end = r.queued_at_end;
  return out;
}

std::vector<m2o::DirectedLink> LinkList(const m2o::Topology& t, const m2o_link* links,
                                        size_t n) {
  if (links == nullptr) return t.links;
  std::vector<m2o::DirectedLink> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Require(links[i].tx < t.size() && links[i].rx < t.size(), "link endpoint out of range");
    out.push_back(m2o::DirectedLink{links[i].tx, links[i].rx});
  }
  return out;
}

const m2o::Topology& Get(const m2o_topology* t) {
  Require(t != nullptr, "topology is null");
  return t->value;
}

void Emit(m2o_topology** out, m2o::Topology t) {
  Require(out != nullptr, "output pointer is null");
  *out = new m2o_topology{std::move(t)};
}

void Emit(m2o_schedule** out, m2o::Schedule s) {
  Require(out != nullptr, "output pointer is null");
  *out = new m2o_schedule{std::move(s)};
}

std::string ReadAll(const char* path) {
  Require(path != nullptr, "path is null");
  std::ifstream in(path);
  if (!in) m2o::Fail(m2o::ErrorCode::kIo, std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

m2o::CentricParams ToCpp(const m2o_centric_params* p) {
  Require(p != nullptr, "params are null");
  m2o::CentricParams r;
  r.outer_radius = p->outer_radius;
  r.inner_radius = p->inner_radius;
  r.canonical = m2o::CanonicalSpec::Variable(p->num_chains, p->hops_per_chain, p->d0,
                                             p->d1, p->d);
  r.min_sep = p->min_sep;
  r.n_outer = p->n_outer;
  r.tx_range = p->tx_range;
  r.seed = p->seed;
  return r;
}

m2o::ManifoldParams ToCpp(const m2o_manifold_params* p) {
  Require(p != nullptr, "params are null");
  m2o::ManifoldParams r;
  r.outer_radius = p->outer_radius;
  r.inner_radius = p->inner_radius;
  r.d0 = p->d0;
  r.d1 = p->d1;
  r.central_rings = p->central_rings;
  r.branch_nodes = p->branch_nodes;
  r.branch_half_angle = p->branch_half_angle;
  r.min_sep = p->min_sep;
  r.n_outer = p->n_outer;
  r.tx_range = p->tx_range;
  r.position_error = p->position_error;
  r.seed = p->seed;
  return r;
}

}  // namespace

extern "C" {

const char* m2o_last_error(void) { return g_last_error.c_str(); }

const char* m2o_status_name(m2o_status status) {
  switch (status) {
    case M2O_OK: return "ok";
    case M2O_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case M2O_ERR_DOMAIN: return "domain";
    case M2O_ERR_UNREACHABLE: return "unreachable";
    case M2O_ERR_IO: return "io";
    case M2O_ERR_PARSE: return "parse";
    case M2O_ERR_INFEASIBLE: return "infeasible";
    case M2O_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void m2o_string_free(char* s) { std::free(s); }

void m2o_radio_config_default(m2o_radio_config* out) {
  if (out == nullptr) return;
  const m2o::RadioConfig d;
  *out = m2o_radio_config{d.tx_range, d.cs_range, d.path_loss_exp, d.sir_threshold,
                          d.delta, d.capture_ratio, d.rs_mode ? 1 : 0, d.tx_power,
                          d.link_capacity};
}

void m2o_mac_params_default(m2o_mac_params* out) {
  if (out == nullptr) return;
  const m2o::MacParams d;
  *out = m2o_mac_params{d.slot_time_us, d.sifs_us, d.difs_us, d.cw_min,
                        d.cw_max, d.data_rate_bps, d.phy_header_us, d.ack_time_us,
                        d.payload_bytes, d.overhead_bytes, d.retry_limit};
}

void m2o_traffic_default(m2o_traffic* out) {
  if (out == nullptr) return;
  const m2o::TrafficSpec d;
  *out = m2o_traffic{d.offered_load_bps, M2O_ARRIVAL_CBR, d.queue_capacity};
}

void m2o_sim_options_default(m2o_sim_options* out) {
  if (out == nullptr) return;
  const m2o::SimOptions d;
  *out = m2o_sim_options{d.duration_s, d.warmup_fraction, d.seed, M2O_MODE_PAIRWISE};
}

void m2o_centric_params_default(m2o_centric_params* out) {
  if (out == nullptr) return;
  const m2o::CentricParams d;
  const auto& s = d.canonical.ring_spacings;
  *out = m2o_centric_params{d.outer_radius, d.inner_radius, d.canonical.num_chains,
                            d.canonical.hops_per_chain(), s[0], s[1], s[2],
                            d.min_sep, d.n_outer, d.tx_range, d.seed};
}

void m2o_manifold_params_default(m2o_manifold_params* out) {
  if (out == nullptr) return;
  const m2o::ManifoldParams d;
  *out = m2o_manifold_params{d.outer_radius, d.inner_radius, d.d0, d.d1,
                             d.central_rings, d.branch_nodes, d.branch_half_angle,
                             d.min_sep, d.n_outer, d.tx_range, d.position_error,
                             d.seed};
}

void m2o_benchmark_params_default(m2o_benchmark_params* out) {
  if (out == nullptr) return;
  const m2o::BenchmarkParams d;
  *out = m2o_benchmark_params{d.outer_radius, d.inner_radius, d.n_inner, d.min_sep,
                              d.n_outer, d.tx_range, d.seed};
}

m2o_status m2o_mode_parse(const char* name, m2o_mode* out) {
  return Guard([&] {
    Require(name != nullptr && out != nullptr, "null argument");
    *out = m2o::ParseInterferenceMode(name) == m2o::InterferenceMode::kPairwise
               ? M2O_MODE_PAIRWISE
               : M2O_MODE_AGGREGATE;
  });
}

m2o_status m2o_arrival_parse(const char* name, m2o_arrival* out) {
  return Guard([&] {
    Require(name != nullptr && out != nullptr, "null argument");
    switch (m2o::ParseArrival(name)) {
      case m2o::ArrivalProcess::kCbr: *out = M2O_ARRIVAL_CBR; break;
      case m2o::ArrivalProcess::kPoisson: *out = M2O_ARRIVAL_POISSON; break;
      case m2o::ArrivalProcess::kSaturated: *out = M2O_ARRIVAL_SATURATED; break;
    }
  });
}

m2o_status m2o_scheme_parse(const char* name, m2o_scheme* out) {
  return Guard([&] {
    Require(name != nullptr && out != nullptr, "null argument");
    *out = static_cast<m2o_scheme>(static_cast<int>(m2o::ParseHfpScheme(name)) + 1);
  });
}

const char* m2o_scheme_name(m2o_scheme scheme) {
  if (scheme < M2O_SCHEME_FIXED_378 || scheme > M2O_SCHEME_HFP_SUBSET) return "unknown";
  return m2o::HfpSchemeName(static_cast<m2o::HfpScheme>(scheme - 1));
}

const char* m2o_role_name(m2o_role role) {
  if (role < M2O_ROLE_SOURCE || role > M2O_ROLE_SOURCE_AND_RELAY) return "unknown";
  return m2o::RoleName(static_cast<m2o::NodeRole>(role));
}

const char* m2o_hn_cause_name(m2o_hn_cause cause) {
  if (cause != M2O_HN_INSUFFICIENT_CS_RANGE && cause != M2O_HN_NO_RESTART_CAPTURE) {
    return "unknown";
  }
  return m2o::HnCauseName(static_cast<m2o::HnCause>(cause));
}

m2o_status m2o_delta_margin(double sir_threshold, double path_loss_exp, double* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    *out = m2o::DeltaMargin(sir_threshold, path_loss_exp);
  });
}

m2o_status m2o_first_violated_inequality(const double t1[2], const double r1[2],
                                         const double t2[2], const double r2[2],
                                         double delta, int* out) {
  return Guard([&] {
    Require(t1 && r1 && t2 && r2 && out, "null argument");
    *out = m2o::FirstViolatedInequality({t1[0], t1[1]}, {r1[0], r1[1]}, {t2[0], t2[1]},
                                        {r2[0], r2[1]}, delta);
  });
}

m2o_status m2o_topology_canonical(int num_chains, const double* spacings,
                                  size_t n_spacings, m2o_topology** out) {
  return m2o_topology_canonical_angles(num_chains, spacings, n_spacings, nullptr, out);
}

m2o_status m2o_topology_canonical_angles(int num_chains, const double* spacings,
                                         size_t n_spacings, const double* angles,
                                         m2o_topology** out) {
  return Guard([&] {
    Require(spacings != nullptr || n_spacings == 0, "spacings are null");
    m2o::CanonicalSpec spec;
    spec.num_chains = num_chains;
    spec.ring_spacings.assign(spacings, spacings + n_spacings);
    if (angles != nullptr && num_chains > 0) {
      spec.chain_angles.assign(angles, angles + num_chains);
    }
    Emit(out, m2o::BuildCanonical(spec));
  });
}

m2o_status m2o_topology_linear_chain(int n, double d, m2o_chain_roles roles,
                                     m2o_topology** out) {
  return Guard([&] {
    Require(roles >= M2O_CHAIN_ALL_SOURCES && roles <= M2O_CHAIN_FROM_THIRD_NODE,
            "unknown chain role policy");
    Emit(out, m2o::BuildLinearChain(n, d, static_cast<m2o::ChainRoles>(roles)));
  });
}

m2o_status m2o_topology_two_chain(double d, double bend_angle, int hops,
                                  m2o_topology** out) {
  return Guard([&] { Emit(out, m2o::BuildTwoChainAsym(d, bend_angle, hops)); });
}

m2o_status m2o_topology_random_disk(double disk_radius, double tx_range,
                                    int n_boundary_sources, uint64_t seed,
                                    m2o_topology** out) {
  return Guard([&] {
    Emit(out, m2o::BuildRandomDisk(disk_radius, tx_range, n_boundary_sources, seed));
  });
}

m2o_status m2o_topology_centric(const m2o_centric_params* params, m2o_topology** out) {
  return Guard([&] { Emit(out, m2o::BuildCentric(ToCpp(params))); });
}

m2o_status m2o_topology_manifold(const m2o_manifold_params* params, m2o_topology** out) {
  return Guard([&] { Emit(out, m2o::BuildManifold(ToCpp(params))); });
}

m2o_status m2o_manifold_core_size(const m2o_manifold_params* params, int* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    *out = m2o::ManifoldCoreSize(ToCpp(params));
  });
}

m2o_status m2o_topology_benchmark(const m2o_benchmark_params* p, m2o_topology** out) {
  return Guard([&] {
    Require(p != nullptr, "params are null");
    m2o::BenchmarkParams r;
    r.outer_radius = p->outer_radius;
    r.inner_radius = p->inner_radius;
    r.n_inner = p->n_inner;
    r.min_sep = p->min_sep;
    r.n_outer = p->n_outer;
    r.tx_range = p->tx_range;
    r.seed = p->seed;
    Emit(out, m2o::BuildRandomBenchmark(r));
  });
}

m2o_status m2o_topology_hfp_example(double d0, int hops, m2o_topology** out, uint32_t* a,
                                    uint32_t* b) {
  return Guard([&] { Emit(out, m2o::BuildHfpExample(d0, hops, a, b)); });
}

m2o_status m2o_topology_clone(const m2o_topology* t, m2o_topology** out) {
  return Guard([&] { Emit(out, Get(t)); });
}

void m2o_topology_free(m2o_topology* t) { delete t; }

m2o_status m2o_topology_parse(const char* text, m2o_topology** out) {
  return Guard([&] {
    Require(text != nullptr, "text is null");
    Emit(out, m2o::ParseTopology(text));
  });
}

m2o_status m2o_topology_serialize(const m2o_topology* t, char** out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    *out = CopyString(m2o::SerializeTopology(Get(t)));
  });
}

m2o_status m2o_topology_read_file(const char* path, m2o_topology** out) {
  return Guard([&] {
    Require(path != nullptr, "path is null");
    Emit(out, m2o::ReadTopologyFile(path));
  });
}

m2o_status m2o_topology_write_file(const m2o_topology* t, const char* path) {
  return Guard([&] {
    Require(path != nullptr, "path is null");
    m2o::WriteTopologyFile(Get(t), path);
  });
}

size_t m2o_topology_node_count(const m2o_topology* t) {
  return t == nullptr ? 0 : t->value.size();
}

size_t m2o_topology_link_count(const m2o_topology* t) {
  return t == nullptr ? 0 : t->value.links.size();
}

uint32_t m2o_topology_sink(const m2o_topology* t) {
  return t == nullptr ? UINT32_MAX : t->value.sink;
}

m2o_status m2o_topology_node(const m2o_topology* t, uint32_t id, double* x, double* y,
                             m2o_role* role) {
  return Guard([&] {
    const m2o::Topology& topo = Get(t);
    Require(id < topo.size(), "node id out of range");
    if (x != nullptr) *x = topo.positions[id].x;
    if (y != nullptr) *y = topo.positions[id].y;
    if (role != nullptr) *role = static_cast<m2o_role>(topo.roles[id]);
  });
}

m2o_status m2o_topology_link(const m2o_topology* t, size_t index, m2o_link* out) {
  return Guard([&] {
    const m2o::Topology& topo = Get(t);
    Require(index < topo.links.size(), "link index out of range");
    Require(out != nullptr, "output pointer is null");
    *out = ToC(topo.links[index]);
  });
}

m2o_status m2o_topology_next_hop(const m2o_topology* t, uint32_t id, uint32_t* out) {
  return Guard([&] {
    const m2o::Topology& topo = Get(t);
    Require(id < topo.size(), "node id out of range");
    Require(out != nullptr, "output pointer is null");
    *out = id < topo.next_hop.size() ? topo.next_hop[id] : m2o::kNoRoute;
  });
}

m2o_status m2o_topology_ring(const m2o_topology* t, uint32_t id, int* out) {
  return Guard([&] {
    const m2o::Topology& topo = Get(t);
    Require(id < topo.size(), "node id out of range");
    Require(out != nullptr, "output pointer is null");
    *out = id < topo.ring_index.size() ? topo.ring_index[id] : -1;
  });
}

m2o_status m2o_topology_sources(const m2o_topology* t, uint32_t* ids, size_t cap,
                                size_t* count) {
  return Guard([&] {
    const std::vector<m2o::NodeId> src = Get(t).Sources();
    for (size_t i = 0; i < src.size() && i < cap && ids != nullptr; ++i) ids[i] = src[i];
    if (count != nullptr) *count = src.size();
  });
}

m2o_status m2o_topology_route_links(const m2o_topology* t, m2o_link* links, size_t cap,
                                    size_t* count) {
  return Guard([&] {
    const std::vector<m2o::DirectedLink> rl = Get(t).RouteLinks();
    for (size_t i = 0; i < rl.size() && i < cap && links != nullptr; ++i) {
      links[i] = ToC(rl[i]);
    }
    if (count != nullptr) *count = rl.size();
  });
}

m2o_status m2o_topology_validate(const m2o_topology* t) {
  return Guard([&] { Get(t).Validate(); });
}

m2o_status m2o_hidden_node_pairs(const m2o_topology* t, const m2o_link* links,
                                 size_t n_links, const m2o_radio_config* cfg,
                                 m2o_hidden_pair* out, size_t cap, size_t* count) {
  return Guard([&] {
    const m2o::Topology& topo = Get(t);
    const auto pairs = m2o::HiddenNodePairs(topo, LinkList(topo, links, n_links), ToCpp(cfg));
    for (size_t i = 0; i < pairs.size() && i < cap && out != nullptr; ++i) {
      out[i] = m2o_hidden_pair{ToC(pairs[i].aggressor), ToC(pairs[i].victim),
                               static_cast<m2o_hn_cause>(pairs[i].cause)};
    }
    if (count != nullptr) *count = pairs.size();
  });
}

m2o_status m2o_min_hfd_csrange(const m2o_topology* t, const m2o_link* links,
                               size_t n_links, const m2o_radio_config* cfg, double* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    const m2o::Topology& topo = Get(t);
    *out = m2o::MinHfdCsRange(topo, LinkList(topo, links, n_links), ToCpp(cfg));
  });
}

m2o_status m2o_max_concurrent_ring(const m2o_topology* t, const m2o_radio_config* cfg,
                                   int ring, int hfd_constraint, int* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    *out = m2o::MaxConcurrentRing(Get(t), ToCpp(cfg), ring, hfd_constraint != 0);
  });
}

m2o_status m2o_lemma2_feasible(double theta, double rho, double delta, int* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    *out = m2o::Lemma2Feasible(theta, rho, delta) ? 1 : 0;
  });
}

m2o_status m2o_lemma2_cs_bounds(double theta, double rho, double* lower, double* upper) {
  return Guard([&] {
    if (lower != nullptr) *lower = m2o::Lemma2CsLower(theta, rho);
    if (upper != nullptr) *upper = m2o::Lemma2CsUpper(theta, rho);
  });
}

m2o_status m2o_aggregate_sir(const m2o_topology* t, const m2o_radio_config* cfg,
                             m2o_link victim, const uint32_t* active, size_t n_active,
                             double* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    Require(active != nullptr || n_active == 0, "active nodes are null");
    const m2o::Topology& topo = Get(t);
    Require(victim.tx < topo.size() && victim.rx < topo.size(), "victim out of range");
    std::vector<m2o::NodeId> act;
    for (size_t i = 0; i < n_active; ++i) {
      Require(active[i] < topo.size(), "active node out of range");
      act.push_back(active[i]);
    }
    *out = m2o::AggregateSir(topo, ToCpp(cfg), m2o::DirectedLink{victim.tx, victim.rx},
                             act);
  });
}

m2o_status m2o_upper_bound(const m2o_topology* t, const m2o_radio_config* cfg,
                           m2o_capacity_report* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    const m2o::CapacityReport r = m2o::UpperBound(Get(t), ToCpp(cfg));
    *out = m2o_capacity_report{r.bound_fraction, r.ring2_concurrency,
                               r.equal_length ? 1 : 0};
  });
}

m2o_status m2o_chain_capacity(int n, double* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    *out = m2o::ChainCapacity(n);
  });
}

m2o_status m2o_schedule_parse(const char* text, m2o_schedule** out) {
  return Guard([&] {
    Require(text != nullptr, "text is null");
    Emit(out, m2o::ParseSchedule(text));
  });
}

m2o_status m2o_schedule_read_file(const char* path, m2o_schedule** out) {
  return Guard([&] { Emit(out, m2o::ParseSchedule(ReadAll(path))); });
}

m2o_status m2o_schedule_serialize(const m2o_schedule* s, char** out) {
  return Guard([&] {
    Require(s != nullptr && out != nullptr, "null argument");
    *out = CopyString(m2o::SerializeSchedule(s->value));
  });
}

m2o_status m2o_schedule_fig9(int hops_per_chain, m2o_schedule** out) {
  return Guard([&] { Emit(out, m2o::Fig9Schedule(hops_per_chain)); });
}

m2o_status m2o_schedule_fig12(int hops_per_chain, m2o_schedule** out) {
  return Guard([&] { Emit(out, m2o::Fig12Schedule(hops_per_chain)); });
}

m2o_status m2o_schedule_chain(int n, m2o_schedule** out) {
  return Guard([&] { Emit(out, m2o::ChainSchedule(n)); });
}

int m2o_schedule_frame_slots(const m2o_schedule* s) {
  return s == nullptr ? 0 : s->value.frame_slots();
}

void m2o_schedule_free(m2o_schedule* s) { delete s; }

m2o_status m2o_verify_schedule(const m2o_topology* t, const m2o_schedule* s,
                               const m2o_radio_config* cfg, m2o_mode mode,
                               m2o_violation* out, size_t cap, size_t* count) {
  return Guard([&] {
    Require(s != nullptr, "schedule is null");
    const auto v = m2o::VerifySchedule(Get(t), s->value, ToCpp(cfg), ToCpp(mode));
    for (size_t i = 0; i < v.size() && i < cap && out != nullptr; ++i) {
      m2o_violation& o = out[i];
      o = m2o_violation{};
      o.slot = v[i].slot;
      o.a = ToC(v[i].a);
      o.b = ToC(v[i].b);
      o.inequality = v[i].inequality;
      std::strncpy(o.kind, v[i].kind.c_str(), sizeof(o.kind) - 1);
    }
    if (count != nullptr) *count = v.size();
  });
}

m2o_status m2o_schedule_throughput(const m2o_topology* t, const m2o_schedule* s,
                                   const m2o_radio_config* cfg, double* aggregate,
                                   double* per_source) {
  return Guard([&] {
    Require(s != nullptr, "schedule is null");
    const auto r = m2o::ComputeScheduleThroughput(Get(t), s->value, ToCpp(cfg));
    if (aggregate != nullptr) *aggregate = r.aggregate;
    if (per_source != nullptr) *per_source = r.per_source_rate;
  });
}

m2o_status m2o_simulate(const m2o_topology* t, const m2o_radio_config* cfg,
                        const m2o_mac_params* mac, const m2o_traffic* traffic,
                        const m2o_sim_options* opts, m2o_sim_result* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    *out = ToC(m2o::Simulate(Get(t), ToCpp(cfg), ToCpp(mac), ToCpp(traffic), ToCpp(opts)));
  });
}

m2o_status m2o_measure_link_capacity(const m2o_radio_config* cfg,
                                     const m2o_mac_params* mac,
                                     const m2o_sim_options* opts, double* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    *out = m2o::MeasureLinkCapacity(ToCpp(cfg), ToCpp(mac), ToCpp(opts));
  });
}

m2o_status m2o_default_load_grid(double l_sim, int n_sources, int points, double* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    const auto g = m2o::DefaultLoadGrid(l_sim, n_sources, points);
    std::copy(g.begin(), g.end(), out);
  });
}

m2o_status m2o_geometric_grid(double lo, double hi, int points, double* out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    const auto g = m2o::GeometricGrid(lo, hi, points);
    std::copy(g.begin(), g.end(), out);
  });
}

m2o_status m2o_sweep_load(const m2o_topology* t, const m2o_radio_config* cfg,
                          const m2o_mac_params* mac, const m2o_traffic* traffic,
                          const double* loads, size_t n_loads, int refine_points,
                          const m2o_sim_options* opts, m2o_sweep_point* out,
                          size_t* count, size_t* best) {
  return Guard([&] {
    Require(loads != nullptr && n_loads > 0, "load grid is empty");
    Require(refine_points >= 0, "refine_points must be >= 0");
    Require(out != nullptr, "output pointer is null");
    const std::vector<double> grid(loads, loads + n_loads);
    const m2o::SweepResult r =
        refine_points > 0
            ? m2o::SweepLoadRefined(Get(t), ToCpp(cfg), ToCpp(mac), ToCpp(traffic), grid,
                                    refine_points, ToCpp(opts))
            : m2o::SweepLoad(Get(t), ToCpp(cfg), ToCpp(mac), ToCpp(traffic), grid,
                             ToCpp(opts));
    for (size_t i = 0; i < r.curve.size(); ++i) {
      out[i] = m2o_sweep_point{r.curve[i].offered_load_bps, ToC(r.curve[i].result)};
    }
    if (count != nullptr) *count = r.curve.size();
    if (best != nullptr) *best = r.best_index;
  });
}

m2o_status m2o_hfp_select(const m2o_topology* t, const m2o_radio_config* cfg,
                          m2o_scheme scheme, uint64_t budget, m2o_selection** out) {
  return Guard([&] {
    Require(out != nullptr, "output pointer is null");
    const m2o::Topology& topo = Get(t);
    const m2o::RadioConfig c = ToCpp(cfg);
    m2o::PathSelection sel;
    switch (scheme) {
      case M2O_SCHEME_FIXED_378: sel = m2o::SelectScheme1(topo, c); break;
      case M2O_SCHEME_MIN_HFD_ALL_LINKS: sel = m2o::SelectScheme2(topo, c); break;
      case M2O_SCHEME_HFP_SUBSET: {
        m2o::HfpOptions o;
        if (budget > 0) o.budget = budget;
        sel = m2o::SelectScheme3(topo, c, o);
        break;
      }
      default: m2o::Fail(m2o::ErrorCode::kInvalidArgument, "unknown scheme");
    }
    *out = new m2o_selection{std::move(sel)};
  });
}

void m2o_selection_free(m2o_selection* s) { delete s; }

double m2o_selection_cs_range(const m2o_selection* s) {
  return s == nullptr ? 0.0 : s->value.cs_range;
}

double m2o_selection_objective(const m2o_selection* s) {
  return s == nullptr ? 0.0 : s->value.objective;
}

int m2o_selection_budget_exhausted(const m2o_selection* s) {
  return s != nullptr && s->value.budget_exhausted ? 1 : 0;
}

size_t m2o_selection_link_count(const m2o_selection* s) {
  return s == nullptr ? 0 : s->value.active_links.size();
}

size_t m2o_selection_path_count(const m2o_selection* s) {
  return s == nullptr ? 0 : s->value.paths.size();
}

m2o_status m2o_selection_serialize(const m2o_selection* s, char** out) {
  return Guard([&] {
    Require(s != nullptr && out != nullptr, "null argument");
    *out = CopyString(m2o::SerializeSelection(s->value));
  });
}

m2o_status m2o_selection_apply(const m2o_topology* t, const m2o_selection* s,
                               m2o_topology** out) {
  return Guard([&] {
    Require(s != nullptr, "selection is null");
    Emit(out, m2o::ApplySelection(Get(t), s->value));
  });
}

}  // extern "C"
