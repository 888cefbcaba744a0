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

#ifndef M2O_CAPACITY_HPP_
#define M2O_CAPACITY_HPP_

#include <map>
#include <string>
#include <vector>

#include "m2o/geometry.hpp"
#include "m2o/topology.hpp"

namespace m2o {

enum class InterferenceMode { kPairwise, kAggregate };
const char* InterferenceModeName(InterferenceMode mode);
InterferenceMode ParseInterferenceMode(const std::string& name);

// A periodic frame of equal slots. slots[k] lists the links active in slot k.
struct Schedule {
  std::vector<std::vector<DirectedLink>> slots;

  int frame_slots() const { return static_cast<int>(slots.size()); }
  // Fraction of slots in which each link is active.
  std::map<DirectedLink, double> Airtime() const;
  // The frame repeated `times` times.
  Schedule Repeated(int times) const;
};

std::string SerializeSchedule(const Schedule& schedule);
Schedule ParseSchedule(const std::string& text);

struct CapacityReport {
  double bound_fraction = 0.0;  // of L
  int ring2_concurrency = 0;    // k
  bool equal_length = false;
  std::string binding_constraint;
};

// k/(k+1) with k the largest set of pairwise compatible 2-hop route links.
// The topology is assumed hidden-node free at config.cs_range. Throws kDomain
// when a source sits one hop from the sink.
CapacityReport UpperBound(const Topology& topology, const RadioConfig& config);

// n/(3n-3) for a chain where all n nodes generate traffic.
double ChainCapacity(int n);

struct ScheduleViolation {
  int slot = 0;  // 0-based
  DirectedLink a;
  DirectedLink b;
  // 1..8 for a broken distance inequality, 0 otherwise.
  int inequality = 0;
  std::string kind;  // "incompatible", "senses", "low_sir", "unknown_link"
};

// Empty result means the schedule is valid.
std::vector<ScheduleViolation> VerifySchedule(const Topology& topology,
                                              const Schedule& schedule,
                                              const RadioConfig& config,
                                              InterferenceMode mode);

struct ScheduleThroughput {
  double per_source_rate = 0.0;             // bits/s, equal for all sources
  std::map<NodeId, double> per_flow;        // bits/s
  std::map<DirectedLink, double> link_flow; // bits/s carried per route link
  double aggregate = 0.0;                   // bits/s into the sink
};

// Largest equal per-source rate sustainable when link e carries at most
// airtime(e)*L along the static routes.
ScheduleThroughput ComputeScheduleThroughput(const Topology& topology,
                                             const Schedule& schedule,
                                             const RadioConfig& config);

// Slot patterns for BuildTwoChainAsym and the Fig12Preset canonical network.
Schedule Fig9Schedule(int hops_per_chain);
Schedule Fig12Schedule(int hops_per_chain);
// Airtime-proportional reuse schedule for BuildLinearChain(n, d, kAllSources).
Schedule ChainSchedule(int n);

}  // namespace m2o

#endif  // M2O_CAPACITY_HPP_
