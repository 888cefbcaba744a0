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

#ifndef M2O_HFP_HPP_
#define M2O_HFP_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "m2o/geometry.hpp"
#include "m2o/topology.hpp"

namespace m2o {

enum class HfpScheme { kFixed378, kMinHfdAllLinks, kHfpSubset };
const char* HfpSchemeName(HfpScheme scheme);
HfpScheme ParseHfpScheme(const std::string& name);

struct PathSelection {
  HfpScheme scheme = HfpScheme::kFixed378;
  std::vector<DirectedLink> active_links;        // sorted
  double cs_range = 0.0;
  std::map<NodeId, std::vector<NodeId>> paths;   // source -> nodes to sink
  double objective = 0.0;  // capacity estimate, fraction of L
  bool budget_exhausted = false;
  std::uint64_t expansions = 0;
};

// All links active, cs_range = 3.78 * tx_range, min-hop paths.
PathSelection SelectScheme1(const Topology& topology, const RadioConfig& config);
// All links active, cs_range = minimal hidden-node-free value, min-hop paths.
PathSelection SelectScheme2(const Topology& topology, const RadioConfig& config);

struct HfpOptions {
  std::uint64_t budget = 20000;  // search-node expansions
  double hop_stretch = 1.5;
  int max_candidates = 8;
};

// Branch-and-bound over per-source candidate paths. The objective of a link
// set is S / W capped at 3/4, where S is the number of sources and W the
// heaviest clique of its conflict graph, with link weights counting the
// sources routed through them, at the set's own minimal hidden-node-free
// cs_range. Ties go to the smaller cs_range, then the smaller link list.
PathSelection SelectScheme3(const Topology& topology, const RadioConfig& config,
                            const HfpOptions& options = {});

// Objective of an explicit set of source paths.
double PathSetObjective(const Topology& topology, const RadioConfig& config,
                        const std::map<NodeId, std::vector<NodeId>>& paths,
                        double* cs_range = nullptr);

// Copy of `topology` restricted to the selection: its links become the active
// links and its routes follow the selected paths.
Topology ApplySelection(const Topology& topology, const PathSelection& selection);

std::string SerializeSelection(const PathSelection& selection);

}  // namespace m2o

#endif  // M2O_HFP_HPP_
