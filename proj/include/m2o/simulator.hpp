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

#ifndef M2O_SIMULATOR_HPP_
#define M2O_SIMULATOR_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "m2o/capacity.hpp"
#include "m2o/geometry.hpp"
#include "m2o/topology.hpp"

namespace m2o {

struct MacParams {
  double slot_time_us = 20.0;
  double sifs_us = 10.0;
  double difs_us = 50.0;
  int cw_min = 31;
  int cw_max = 1023;
  double data_rate_bps = 11e6;
  double phy_header_us = 192.0;
  double ack_time_us = 304.0;   // 14-byte ACK at 1 Mb/s plus preamble
  int payload_bytes = 1460;
  int overhead_bytes = 56;      // MAC + network headers carried with payload
  int retry_limit = 7;

  double DataTimeUs() const;
  void Validate() const;
};

enum class ArrivalProcess { kCbr, kPoisson, kSaturated };
const char* ArrivalName(ArrivalProcess arrival);
ArrivalProcess ParseArrival(const std::string& name);

struct TrafficSpec {
  double offered_load_bps = 0.0;  // per source
  ArrivalProcess arrival = ArrivalProcess::kCbr;
  int queue_capacity = 50;        // packets per node
  void Validate() const;
};

struct SimOptions {
  double duration_s = 20.0;
  double warmup_fraction = 0.1;
  std::uint64_t seed = 1;
  InterferenceMode mode = InterferenceMode::kPairwise;
  void Validate() const;
};

struct SimResult {
  double aggregate_throughput_bps = 0.0;
  std::map<NodeId, double> per_flow_throughput_bps;
  std::uint64_t collisions_hidden_node = 0;
  std::uint64_t collisions_countdown = 0;
  std::vector<double> per_node_airtime;
  double sim_duration_s = 0.0;
  double measured_s = 0.0;  // length of the post-warm-up window
  // Whole-run packet accounting.
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_queue = 0;
  std::uint64_t dropped_retry = 0;
  std::uint64_t queued_at_end = 0;
};

// Runs DCF basic access over the static routes of `topology`. Deterministic in
// options.seed.
SimResult Simulate(const Topology& topology, const RadioConfig& config,
                   const MacParams& mac, const TrafficSpec& traffic,
                   const SimOptions& options);

// Throughput of one saturated link with no other nodes.
double MeasureLinkCapacity(const RadioConfig& config, const MacParams& mac,
                           const SimOptions& options);

std::vector<double> GeometricGrid(double lo, double hi, int points);
// `points` loads spanning [0.05, 1.2] * l_sim / n_sources.
std::vector<double> DefaultLoadGrid(double l_sim, int n_sources, int points = 20);

struct SweepPoint {
  double offered_load_bps = 0.0;
  SimResult result;
};

struct SweepResult {
  std::vector<SweepPoint> curve;
  std::size_t best_index = 0;

  const SweepPoint& best() const { return curve.at(best_index); }
};

// One run per load. Run i uses a seed derived from options.seed and i; the
// best point is the highest aggregate throughput, ties to the lower load.
SweepResult SweepLoad(const Topology& topology, const RadioConfig& config,
                      const MacParams& mac, const TrafficSpec& traffic,
                      const std::vector<double>& load_grid,
                      const SimOptions& options);

// SweepLoad on `coarse_grid`, then `refine_points` evenly spaced loads
// strictly between the neighbours of the coarse peak.
SweepResult SweepLoadRefined(const Topology& topology, const RadioConfig& config,
                             const MacParams& mac, const TrafficSpec& traffic,
                             const std::vector<double>& coarse_grid,
                             int refine_points, const SimOptions& options);

struct CsRangeRow {
  double cs_range = 0.0;
  bool hfd = false;
  SweepResult sweep;
};

// SweepLoad at each cs_range with receiver restart on. Every row reuses the
// same seeds.
std::vector<CsRangeRow> CsRangeSweep(const Topology& topology,
                                     const RadioConfig& config,
                                     const MacParams& mac,
                                     const TrafficSpec& traffic,
                                     const std::vector<double>& cs_grid,
                                     const std::vector<double>& load_grid,
                                     const SimOptions& options);

std::string CsvHeader();
std::string CsvRow(double cs_range, double offered_load_bps,
                   const SimResult& result, double link_capacity_bps);

}  // namespace m2o

#endif  // M2O_SIMULATOR_HPP_
