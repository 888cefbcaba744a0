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

#include "m2o/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "m2o/conflict.hpp"
#include "m2o/error.hpp"

namespace m2o {
namespace {

std::string LinkText(const DirectedLink& l) {
  return std::to_string(l.tx) + "->" + std::to_string(l.rx);
}

NodeId ParseNode(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used == s.size() && v < kNoRoute) return static_cast<NodeId>(v);
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kParse, "bad node id '" + s + "' in schedule");
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Per-chain slot patterns (1-based slot labels), indexed by hop position.
Schedule TiledChains(const std::vector<std::vector<int>>& patterns, int hops,
                     int frame) {
  if (hops < 1) Fail(ErrorCode::kInvalidArgument, "hops_per_chain must be >= 1");
  Schedule s;
  s.slots.resize(static_cast<std::size_t>(frame));
  for (std::size_t c = 0; c < patterns.size(); ++c) {
    const auto& pat = patterns[c];
    for (int i = 1; i <= hops; ++i) {
      const NodeId tx = static_cast<NodeId>(1 + c * hops + (i - 1));
      const NodeId rx = i == 1 ? 0 : tx - 1;
      const int slot = pat[static_cast<std::size_t>((i - 1) % pat.size())];
      s.slots[static_cast<std::size_t>(slot - 1)].push_back({tx, rx});
    }
  }
  for (auto& slot : s.slots) std::sort(slot.begin(), slot.end());
  return s;
}

}  // namespace

const char* InterferenceModeName(InterferenceMode mode) {
  return mode == InterferenceMode::kPairwise ? "pairwise" : "aggregate";
}

InterferenceMode ParseInterferenceMode(const std::string& name) {
  if (name == "pairwise") return InterferenceMode::kPairwise;
  if (name == "aggregate") return InterferenceMode::kAggregate;
  Fail(ErrorCode::kInvalidArgument, "mode must be 'pairwise' or 'aggregate'");
}

std::map<DirectedLink, double> Schedule::Airtime() const {
  std::map<DirectedLink, double> out;
  if (slots.empty()) return out;
  for (const auto& slot : slots) {
    for (const auto& l : std::set<DirectedLink>(slot.begin(), slot.end())) {
      out[l] += 1.0;
    }
  }
  for (auto& [link, x] : out) x /= static_cast<double>(slots.size());
  return out;
}

Schedule Schedule::Repeated(int times) const {
  if (times < 1) Fail(ErrorCode::kInvalidArgument, "repeat count must be >= 1");
  Schedule s;
  for (int k = 0; k < times; ++k) {
    s.slots.insert(s.slots.end(), slots.begin(), slots.end());
  }
  return s;
}

std::string SerializeSchedule(const Schedule& schedule) {
  std::ostringstream out;
  for (std::size_t k = 0; k < schedule.slots.size(); ++k) {
    out << "slot " << k + 1 << ':';
    const auto& slot = schedule.slots[k];
    for (std::size_t i = 0; i < slot.size(); ++i) {
      out << (i ? ", " : " ") << LinkText(slot[i]);
    }
    out << '\n';
  }
  return out.str();
}

Schedule ParseSchedule(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<int, std::vector<DirectedLink>> slots;
  while (std::getline(in, line)) {
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (line.rfind("slot ", 0) != 0 || colon == std::string::npos) {
      Fail(ErrorCode::kParse, "expected 'slot <k>: ...', got '" + line + "'");
    }
    int k = 0;
    try {
      k = std::stoi(line.substr(5, colon - 5));
    } catch (const std::exception&) {
      Fail(ErrorCode::kParse, "bad slot number in '" + line + "'");
    }
    if (k < 1 || slots.count(k)) {
      Fail(ErrorCode::kParse, "slot numbers must be unique and >= 1");
    }
    auto& links = slots[k];
    std::istringstream items(line.substr(colon + 1));
    for (std::string item; std::getline(items, item, ',');) {
      item = Trim(item);
      if (item.empty()) continue;
      const auto arrow = item.find("->");
      if (arrow == std::string::npos) {
        Fail(ErrorCode::kParse, "expected 'tx->rx', got '" + item + "'");
      }
      links.push_back({ParseNode(Trim(item.substr(0, arrow))),
                       ParseNode(Trim(item.substr(arrow + 2)))});
    }
  }
  Schedule s;
  int expect = 1;
  for (auto& [k, links] : slots) {
    if (k != expect++) Fail(ErrorCode::kParse, "slot numbers must be 1..F");
    s.slots.push_back(std::move(links));
  }
  return s;
}

CapacityReport UpperBound(const Topology& t, const RadioConfig& config) {
  config.Validate();
  const std::vector<int> ring = ComputeRingIndex(t);
  for (NodeId s : t.Sources()) {
    if (ring[s] < 2) {
      Fail(ErrorCode::kDomain, "source " + std::to_string(s) +
                                   " is within one hop of the sink; the ring "
                                   "bound needs sources at least two hops out");
    }
  }
  const std::vector<DirectedLink> links = t.RouteLinks();
  CapacityReport r;
  r.ring2_concurrency = MaxConcurrentRing(t, links, config, 2);
  const double k = r.ring2_concurrency;
  r.bound_fraction = k / (k + 1.0);
  r.equal_length = !links.empty();
  const double first = links.empty() ? 0.0 : t.LinkLength(links.front());
  for (const auto& l : links) {
    if (std::abs(t.LinkLength(l) - first) > 1e-9 * first) r.equal_length = false;
  }
  std::ostringstream why;
  why << "at most " << r.ring2_concurrency
      << " concurrent 2-hop transmissions; 1-hop airtime <= " << r.ring2_concurrency
      << "/" << r.ring2_concurrency + 1;
  r.binding_constraint = why.str();
  return r;
}

double ChainCapacity(int n) {
  if (n < 2) Fail(ErrorCode::kDomain, "chain capacity needs n >= 2");
  return static_cast<double>(n) / (3.0 * n - 3.0);
}

std::vector<ScheduleViolation> VerifySchedule(const Topology& t,
                                              const Schedule& schedule,
                                              const RadioConfig& config,
                                              InterferenceMode mode) {
  config.Validate();
  const std::set<DirectedLink> known(t.links.begin(), t.links.end());
  const auto& p = t.positions;
  std::vector<ScheduleViolation> out;
  for (std::size_t k = 0; k < schedule.slots.size(); ++k) {
    const int slot = static_cast<int>(k);
    const auto& links = schedule.slots[k];
    bool usable = true;
    for (const auto& l : links) {
      if (!known.count(l)) {
        out.push_back({slot, l, l, 0, "unknown_link"});
        usable = false;
      }
    }
    if (!usable) continue;
    for (std::size_t i = 0; i < links.size(); ++i) {
      for (std::size_t j = i + 1; j < links.size(); ++j) {
        const auto& a = links[i];
        const auto& b = links[j];
        if (WithinCs(p[a.tx], p[b.tx], config.cs_range)) {
          out.push_back({slot, a, b, 0, "senses"});
        }
        if (mode == InterferenceMode::kPairwise) {
          const int bad = FirstViolatedInequality(p[a.tx], p[a.rx], p[b.tx], p[b.rx],
                                                  config.delta);
          if (bad != 0) out.push_back({slot, a, b, bad, "incompatible"});
        }
      }
    }
    if (mode != InterferenceMode::kAggregate) continue;
    // DATA phase: receivers against all other transmitters; ACK phase: the
    // roles swap.
    std::vector<NodeId> txs, rxs;
    for (const auto& l : links) {
      txs.push_back(l.tx);
      rxs.push_back(l.rx);
    }
    for (std::size_t i = 0; i < links.size(); ++i) {
      const auto& l = links[i];
      bool shared = false;
      for (const auto& o : links) {
        if (!(o == l) && (o.tx == l.rx || o.rx == l.tx || o.tx == l.tx || o.rx == l.rx)) {
          out.push_back({slot, l, o, 0, "incompatible"});
          shared = true;
        }
      }
      if (shared) continue;
      const double data = AggregateSir(t, config, l, txs);
      const double ack = AggregateSir(t, config, {l.rx, l.tx}, rxs);
      if (data < config.sir_threshold || ack < config.sir_threshold) {
        out.push_back({slot, l, l, 0, "low_sir"});
      }
    }
  }
  return out;
}

ScheduleThroughput ComputeScheduleThroughput(const Topology& t,
                                             const Schedule& schedule,
                                             const RadioConfig& config) {
  config.Validate();
  const auto airtime = schedule.Airtime();
  const std::vector<NodeId> sources = t.Sources();
  std::map<DirectedLink, int> load;
  for (NodeId s : sources) {
    const std::vector<NodeId> path = t.PathOf(s);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) ++load[{path[i], path[i + 1]}];
  }
  ScheduleThroughput r;
  if (sources.empty()) return r;
  double rate = std::numeric_limits<double>::infinity();
  for (const auto& [link, n] : load) {
    const auto it = airtime.find(link);
    const double x = it == airtime.end() ? 0.0 : it->second;
    rate = std::min(rate, x * config.link_capacity / n);
  }
  r.per_source_rate = rate;
  for (NodeId s : sources) r.per_flow[s] = rate;
  for (const auto& [link, n] : load) r.link_flow[link] = rate * n;
  r.aggregate = rate * static_cast<double>(sources.size());
  return r;
}

Schedule Fig9Schedule(int hops) {
  return TiledChains({{1, 3, 2}, {2, 3, 1}}, hops, 3);
}

Schedule Fig12Schedule(int hops) {
  return TiledChains({{1, 4, 2, 3}, {2, 4, 3, 1}, {3, 4, 1, 2}}, hops, 4);
}

Schedule ChainSchedule(int n) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "chain schedule needs n >= 2");
  // Link i carries n-i+1 flows and gets that many consecutive slots, placed
  // cyclically after link i-1, in a frame of 3n-3 slots. Any three
  // consecutive links then fit in the frame without overlap.
  const int frame = 3 * n - 3;
  Schedule s;
  s.slots.resize(static_cast<std::size_t>(frame));
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    const int len = n - i + 1;
    for (int k = 0; k < len; ++k) {
      s.slots[static_cast<std::size_t>((start + k) % frame)].push_back(
          {static_cast<NodeId>(i), static_cast<NodeId>(i - 1)});
    }
    start = (start + len) % frame;
  }
  for (auto& slot : s.slots) std::sort(slot.begin(), slot.end());
  return s;
}

}  // namespace m2o
