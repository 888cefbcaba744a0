/*
 * Copyright 2026 The m2o Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the m2o many-to-one capacity toolkit.
 *
 * Every fallible call returns an m2o_status. On failure, m2o_last_error()
 * returns a message for the calling thread, valid until its next call.
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Strings returned through char** are released with
 * m2o_string_free. Lengths are meters, rates bits/s, times seconds. */

#ifndef M2O_M2O_H_
#define M2O_M2O_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define M2O_API __declspec(dllexport)
#else
#define M2O_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum m2o_status {
  M2O_OK = 0,
  M2O_ERR_INVALID_ARGUMENT = 1,
  M2O_ERR_DOMAIN = 2,
  M2O_ERR_UNREACHABLE = 3,
  M2O_ERR_IO = 4,
  M2O_ERR_PARSE = 5,
  M2O_ERR_INFEASIBLE = 6,
  M2O_ERR_INTERNAL = 7
} m2o_status;

typedef enum m2o_role {
  M2O_ROLE_SOURCE = 0,
  M2O_ROLE_RELAY = 1,
  M2O_ROLE_SINK = 2,
  M2O_ROLE_SOURCE_AND_RELAY = 3
} m2o_role;

typedef enum m2o_chain_roles {
  M2O_CHAIN_ALL_SOURCES = 0,
  M2O_CHAIN_OUTERMOST_ONLY = 1,
  M2O_CHAIN_FROM_THIRD_NODE = 2
} m2o_chain_roles;

typedef enum m2o_mode { M2O_MODE_PAIRWISE = 0, M2O_MODE_AGGREGATE = 1 } m2o_mode;

typedef enum m2o_arrival {
  M2O_ARRIVAL_CBR = 0,
  M2O_ARRIVAL_POISSON = 1,
  M2O_ARRIVAL_SATURATED = 2
} m2o_arrival;

typedef enum m2o_scheme {
  M2O_SCHEME_FIXED_378 = 1,
  M2O_SCHEME_MIN_HFD_ALL_LINKS = 2,
  M2O_SCHEME_HFP_SUBSET = 3
} m2o_scheme;

typedef enum m2o_hn_cause {
  M2O_HN_INSUFFICIENT_CS_RANGE = 0,
  M2O_HN_NO_RESTART_CAPTURE = 1
} m2o_hn_cause;

typedef struct m2o_link {
  uint32_t tx;
  uint32_t rx;
} m2o_link;

typedef struct m2o_radio_config {
  double tx_range;
  double cs_range;
  double path_loss_exp;
  double sir_threshold;
  double delta;
  double capture_ratio;
  int rs_mode;
  double tx_power;
  double link_capacity;
} m2o_radio_config;

typedef struct m2o_mac_params {
  double slot_time_us;
  double sifs_us;
  double difs_us;
  int cw_min;
  int cw_max;
  double data_rate_bps;
  double phy_header_us;
  double ack_time_us;
  int payload_bytes;
  int overhead_bytes;
  int retry_limit;
} m2o_mac_params;

typedef struct m2o_traffic {
  double offered_load_bps; /* per source */
  m2o_arrival arrival;
  int queue_capacity;
} m2o_traffic;

typedef struct m2o_sim_options {
  double duration_s;
  double warmup_fraction;
  uint64_t seed;
  m2o_mode mode;
} m2o_sim_options;

typedef struct m2o_sim_result {
  double aggregate_throughput_bps;
  uint64_t collisions_hidden_node;
  uint64_t collisions_countdown;
  double sim_duration_s;
  double measured_s;
  uint64_t generated;
  uint64_t delivered;
  uint64_t dropped_queue;
  uint64_t dropped_retry;
  uint64_t queued_at_end;
} m2o_sim_result;

typedef struct m2o_sweep_point {
  double offered_load_bps;
  m2o_sim_result result;
} m2o_sweep_point;

typedef struct m2o_capacity_report {
  double bound_fraction;
  int ring2_concurrency;
  int equal_length;
} m2o_capacity_report;

typedef struct m2o_hidden_pair {
  m2o_link aggressor;
  m2o_link victim;
  m2o_hn_cause cause;
} m2o_hidden_pair;

typedef struct m2o_violation {
  int slot;
  m2o_link a;
  m2o_link b;
  int inequality;
  char kind[16];
} m2o_violation;

typedef struct m2o_centric_params {
  double outer_radius;
  double inner_radius;
  int num_chains;
  int hops_per_chain;
  double d0;
  double d1;
  double d;
  double min_sep;
  int n_outer;
  double tx_range;
  uint64_t seed;
} m2o_centric_params;

typedef struct m2o_manifold_params {
  double outer_radius;
  double inner_radius;
  double d0;
  double d1;
  int central_rings;
  int branch_nodes;
  double branch_half_angle;
  double min_sep;
  int n_outer;
  double tx_range;
  double position_error;
  uint64_t seed;
} m2o_manifold_params;

typedef struct m2o_benchmark_params {
  double outer_radius;
  double inner_radius;
  int n_inner;
  double min_sep;
  int n_outer;
  double tx_range;
  uint64_t seed;
} m2o_benchmark_params;

typedef struct m2o_topology m2o_topology;
typedef struct m2o_schedule m2o_schedule;
typedef struct m2o_selection m2o_selection;

/* ---- errors, strings, defaults ---- */
M2O_API const char* m2o_last_error(void);
M2O_API const char* m2o_status_name(m2o_status status);
M2O_API void m2o_string_free(char* s);

M2O_API void m2o_radio_config_default(m2o_radio_config* out);
M2O_API void m2o_mac_params_default(m2o_mac_params* out);
M2O_API void m2o_traffic_default(m2o_traffic* out);
M2O_API void m2o_sim_options_default(m2o_sim_options* out);
M2O_API void m2o_centric_params_default(m2o_centric_params* out);
M2O_API void m2o_manifold_params_default(m2o_manifold_params* out);
M2O_API void m2o_benchmark_params_default(m2o_benchmark_params* out);

M2O_API m2o_status m2o_mode_parse(const char* name, m2o_mode* out);
M2O_API m2o_status m2o_arrival_parse(const char* name, m2o_arrival* out);
M2O_API m2o_status m2o_scheme_parse(const char* name, m2o_scheme* out);
M2O_API const char* m2o_scheme_name(m2o_scheme scheme);
M2O_API const char* m2o_role_name(m2o_role role);
M2O_API const char* m2o_hn_cause_name(m2o_hn_cause cause);

/* ---- geometry ---- */
M2O_API m2o_status m2o_delta_margin(double sir_threshold, double path_loss_exp,
                                    double* out);
M2O_API m2o_status m2o_first_violated_inequality(const double t1[2], const double r1[2],
                                                 const double t2[2], const double r2[2],
                                                 double delta, int* out);

/* ---- topology construction ---- */
/* spacings[i] separates ring i+1 from ring i; n_spacings is the hop count. */
M2O_API m2o_status m2o_topology_canonical(int num_chains, const double* spacings,
                                          size_t n_spacings, m2o_topology** out);
M2O_API m2o_status m2o_topology_canonical_angles(int num_chains, const double* spacings,
                                                 size_t n_spacings, const double* angles,
                                                 m2o_topology** out);
M2O_API m2o_status m2o_topology_linear_chain(int n, double d, m2o_chain_roles roles,
                                             m2o_topology** out);
M2O_API m2o_status m2o_topology_two_chain(double d, double bend_angle, int hops,
                                          m2o_topology** out);
M2O_API m2o_status m2o_topology_random_disk(double disk_radius, double tx_range,
                                            int n_boundary_sources, uint64_t seed,
                                            m2o_topology** out);
M2O_API m2o_status m2o_topology_centric(const m2o_centric_params* params,
                                        m2o_topology** out);
M2O_API m2o_status m2o_topology_manifold(const m2o_manifold_params* params,
                                         m2o_topology** out);
M2O_API m2o_status m2o_manifold_core_size(const m2o_manifold_params* params, int* out);
M2O_API m2o_status m2o_topology_benchmark(const m2o_benchmark_params* params,
                                          m2o_topology** out);
/* Three-chain network with two spur nodes; their ids go to a and b if non-null. */
M2O_API m2o_status m2o_topology_hfp_example(double d0, int hops, m2o_topology** out,
                                            uint32_t* a, uint32_t* b);
M2O_API m2o_status m2o_topology_clone(const m2o_topology* t, m2o_topology** out);
M2O_API void m2o_topology_free(m2o_topology* t);

/* ---- topology IO ---- */
M2O_API m2o_status m2o_topology_parse(const char* text, m2o_topology** out);
M2O_API m2o_status m2o_topology_serialize(const m2o_topology* t, char** out);
M2O_API m2o_status m2o_topology_read_file(const char* path, m2o_topology** out);
M2O_API m2o_status m2o_topology_write_file(const m2o_topology* t, const char* path);

/* ---- topology queries ---- */
M2O_API size_t m2o_topology_node_count(const m2o_topology* t);
M2O_API size_t m2o_topology_link_count(const m2o_topology* t);
M2O_API uint32_t m2o_topology_sink(const m2o_topology* t);
M2O_API m2o_status m2o_topology_node(const m2o_topology* t, uint32_t id, double* x,
                                     double* y, m2o_role* role);
M2O_API m2o_status m2o_topology_link(const m2o_topology* t, size_t index, m2o_link* out);
/* next hop toward the sink, UINT32_MAX when the node has no route */
M2O_API m2o_status m2o_topology_next_hop(const m2o_topology* t, uint32_t id,
                                         uint32_t* out);
M2O_API m2o_status m2o_topology_ring(const m2o_topology* t, uint32_t id, int* out);
/* Copies up to cap ids; *count receives the total. */
M2O_API m2o_status m2o_topology_sources(const m2o_topology* t, uint32_t* ids, size_t cap,
                                        size_t* count);
M2O_API m2o_status m2o_topology_route_links(const m2o_topology* t, m2o_link* links,
                                            size_t cap, size_t* count);
M2O_API m2o_status m2o_topology_validate(const m2o_topology* t);

/* ---- conflict analysis ----
 * When links is NULL the topology's full link set is used. */
M2O_API m2o_status m2o_hidden_node_pairs(const m2o_topology* t, const m2o_link* links,
                                         size_t n_links, const m2o_radio_config* cfg,
                                         m2o_hidden_pair* out, size_t cap, size_t* count);
M2O_API m2o_status m2o_min_hfd_csrange(const m2o_topology* t, const m2o_link* links,
                                       size_t n_links, const m2o_radio_config* cfg,
                                       double* out);
/* Over the route links; hfd_constraint also requires ring transmitters to be
 * mutually out of cs_range. */
M2O_API m2o_status m2o_max_concurrent_ring(const m2o_topology* t,
                                           const m2o_radio_config* cfg, int ring,
                                           int hfd_constraint, int* out);
M2O_API m2o_status m2o_lemma2_feasible(double theta, double rho, double delta, int* out);
M2O_API m2o_status m2o_lemma2_cs_bounds(double theta, double rho, double* lower,
                                        double* upper);
/* SIR at victim.rx with every node in `active` (other than victim.tx)
 * transmitting; +inf when none interfere. */
M2O_API m2o_status m2o_aggregate_sir(const m2o_topology* t, const m2o_radio_config* cfg,
                                     m2o_link victim, const uint32_t* active,
                                     size_t n_active, double* out);

/* ---- capacity ---- */
M2O_API m2o_status m2o_upper_bound(const m2o_topology* t, const m2o_radio_config* cfg,
                                   m2o_capacity_report* out);
M2O_API m2o_status m2o_chain_capacity(int n, double* out);

M2O_API m2o_status m2o_schedule_parse(const char* text, m2o_schedule** out);
M2O_API m2o_status m2o_schedule_read_file(const char* path, m2o_schedule** out);
M2O_API m2o_status m2o_schedule_serialize(const m2o_schedule* s, char** out);
M2O_API m2o_status m2o_schedule_fig9(int hops_per_chain, m2o_schedule** out);
M2O_API m2o_status m2o_schedule_fig12(int hops_per_chain, m2o_schedule** out);
M2O_API m2o_status m2o_schedule_chain(int n, m2o_schedule** out);
M2O_API int m2o_schedule_frame_slots(const m2o_schedule* s);
M2O_API void m2o_schedule_free(m2o_schedule* s);
/* *count receives the number of violations; zero means valid. */
M2O_API m2o_status m2o_verify_schedule(const m2o_topology* t, const m2o_schedule* s,
                                       const m2o_radio_config* cfg, m2o_mode mode,
                                       m2o_violation* out, size_t cap, size_t* count);
/* Aggregate and per-source equal rate, bits/s. */
M2O_API m2o_status m2o_schedule_throughput(const m2o_topology* t, const m2o_schedule* s,
                                           const m2o_radio_config* cfg,
                                           double* aggregate, double* per_source);

/* ---- simulation ---- */
M2O_API m2o_status m2o_simulate(const m2o_topology* t, const m2o_radio_config* cfg,
                                const m2o_mac_params* mac, const m2o_traffic* traffic,
                                const m2o_sim_options* opts, m2o_sim_result* out);
M2O_API m2o_status m2o_measure_link_capacity(const m2o_radio_config* cfg,
                                             const m2o_mac_params* mac,
                                             const m2o_sim_options* opts, double* out);
/* `points` loads over [0.05, 1.2] * l_sim / n_sources, geometric. */
M2O_API m2o_status m2o_default_load_grid(double l_sim, int n_sources, int points,
                                         double* out);
M2O_API m2o_status m2o_geometric_grid(double lo, double hi, int points, double* out);
/* Runs every load in `loads`, then refine_points extra loads between the
 * neighbours of the peak. `out` needs n_loads + refine_points entries; *count
 * receives the points written and *best the index of the peak. */
M2O_API m2o_status m2o_sweep_load(const m2o_topology* t, const m2o_radio_config* cfg,
                                  const m2o_mac_params* mac, const m2o_traffic* traffic,
                                  const double* loads, size_t n_loads, int refine_points,
                                  const m2o_sim_options* opts, m2o_sweep_point* out,
                                  size_t* count, size_t* best);

/* ---- hidden-node free path selection ---- */
M2O_API m2o_status m2o_hfp_select(const m2o_topology* t, const m2o_radio_config* cfg,
                                  m2o_scheme scheme, uint64_t budget,
                                  m2o_selection** out);
M2O_API void m2o_selection_free(m2o_selection* s);
M2O_API double m2o_selection_cs_range(const m2o_selection* s);
M2O_API double m2o_selection_objective(const m2o_selection* s);
M2O_API int m2o_selection_budget_exhausted(const m2o_selection* s);
M2O_API size_t m2o_selection_link_count(const m2o_selection* s);
M2O_API size_t m2o_selection_path_count(const m2o_selection* s);
M2O_API m2o_status m2o_selection_serialize(const m2o_selection* s, char** out);
/* Topology restricted to the selected links and paths. */
M2O_API m2o_status m2o_selection_apply(const m2o_topology* t, const m2o_selection* s,
                                       m2o_topology** out);

#ifdef __cplusplus
}
#endif

#endif /* M2O_M2O_H_ */
