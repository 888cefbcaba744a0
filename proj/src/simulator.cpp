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

#include "m2o/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_map>

#include "m2o/conflict.hpp"
#include "m2o/error.hpp"
#include "rng.hpp"

namespace m2o {
namespace {

using internal::DeriveSeed;
using internal::Rng;

using Time = std::int64_t;  // nanoseconds
constexpr Time kNever = std::numeric_limits<Time>::max();
constexpr int kNone = -1;

constexpr std::uint64_t kBackoffStream = 0x626b6f;
constexpr std::uint64_t kTrafficStream = 0x747266;
constexpr std::uint64_t kSweepStream = 0x737770;

Time FromUs(double us) { return static_cast<Time>(std::llround(us * 1000.0)); }

enum class FrameKind { kData, kAck };

// Same-instant events run ends before starts so that back-to-back frames do
// not overlap.
enum EventKind : std::uint8_t {
  kFrameEnd = 0,
  kExchangeEnd = 1,
  kAckStart = 2,
  kTxStart = 3,
  kArrival = 4,
};

struct Event {
  Time t;
  std::uint8_t kind;
  NodeId node;
  std::uint64_t seq;
  std::int64_t arg;

  bool operator>(const Event& o) const {
    if (t != o.t) return t > o.t;
    if (kind != o.kind) return kind > o.kind;
    if (node != o.node) return node > o.node;
    return seq > o.seq;
  }
};

struct Frame {
  NodeId tx = 0;
  NodeId dest = 0;
  FrameKind kind = FrameKind::kData;
  Time start = 0;
  Time end = 0;
  Time xstart = 0;  // DATA start of the exchange this frame belongs to
  NodeId xtx = 0;   // DATA transmitter of that exchange
  double link_len = 0.0;
  std::int64_t pid = -1;
  bool failed = false;
  bool has_culprit = false;
  Time culprit_xstart = 0;
  NodeId culprit_xtx = 0;
};

struct Packet {
  NodeId origin = 0;
  NodeId holder = 0;  // kNoRoute once delivered or dropped
};

struct Node {
  std::deque<std::int64_t> queue;
  bool generates = false;
  NodeId next = kNoRoute;
  int cw = 0;
  int retries = 0;
  int backoff = kNone;  // remaining slots
  Time attempt_time = 0;
  bool in_exchange = false;
  bool ack_ok = false;
  bool ack_pending = false;
  NodeId ack_to = 0;
  int cur_frame = kNone;
  int busy = 0;
  Time nav = 0;
  Time idle_start = 0;
  Time tx_at = kNever;
  std::uint64_t tx_ver = 0;
  int lock = kNone;
  Time airtime = 0;
  std::unordered_map<NodeId, std::int64_t> last_from;
};

class Simulation {
 public:
  Simulation(const Topology& t, const RadioConfig& config, const MacParams& mac,
             const TrafficSpec& traffic, const SimOptions& options)
      : topo_(t), cfg_(config), mac_(mac), traffic_(traffic), opt_(options) {
    const std::size_t n = t.size();
    end_time_ = FromUs(options.duration_s * 1e6);
    warmup_ = FromUs(options.duration_s * options.warmup_fraction * 1e6);
    slot_ = FromUs(mac.slot_time_us);
    sifs_ = FromUs(mac.sifs_us);
    difs_ = FromUs(mac.difs_us);
    data_time_ = FromUs(mac.DataTimeUs());
    ack_time_ = FromUs(mac.ack_time_us);
    aggregate_ = options.mode == InterferenceMode::kAggregate;

    dist_.resize(n * n);
    power_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double d = Distance(t.positions[i], t.positions[j]);
        dist_[i * n + j] = d;
        power_[i * n + j] = i == j ? 0.0 : std::pow(d, -config.path_loss_exp);
      }
    }
    nodes_.resize(n);
    double max_len = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      Node& node = nodes_[i];
      node.next = i < t.next_hop.size() ? t.next_hop[i] : kNoRoute;
      node.generates = GeneratesTraffic(t.roles[i]) && i != t.sink;
      node.cw = mac.cw_min;
      if (node.next != kNoRoute) max_len = std::max(max_len, D(i, node.next));
      backoff_rng_.emplace_back(DeriveSeed(options.seed, kBackoffStream, i));
      traffic_rng_.emplace_back(DeriveSeed(options.seed, kTrafficStream, i));
    }
    for (NodeId s : t.Sources()) t.PathOf(s);
    const double reach = std::max(config.cs_range, (1.0 + config.delta) * max_len);
    cs_list_.resize(n);
    affect_list_.resize(n);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (D(i, j) <= config.cs_range) cs_list_[i].push_back(j);
        if (i != j && (aggregate_ || D(i, j) <= reach)) affect_list_[i].push_back(j);
      }
    }
    interf_.assign(n, 0.0);
    result_.per_node_airtime.assign(n, 0.0);
  }

  SimResult Run() {
    for (NodeId i = 0; i < nodes_.size(); ++i) {
      if (!nodes_[i].generates) continue;
      switch (traffic_.arrival) {
        case ArrivalProcess::kSaturated:
          Generate(i);
          break;
        case ArrivalProcess::kCbr:
          if (traffic_.offered_load_bps > 0.0) {
            Push(static_cast<Time>(traffic_rng_[i].Uniform() * Interval()), kArrival, i, 0);
          }
          break;
        case ArrivalProcess::kPoisson:
          if (traffic_.offered_load_bps > 0.0) Push(NextPoisson(i), kArrival, i, 0);
          break;
      }
    }
    while (!events_.empty()) {
      const Event e = events_.top();
      if (e.t > end_time_) break;
      events_.pop();
      now_ = e.t;
      switch (e.kind) {
        case kFrameEnd:
          OnFrameEnd(static_cast<int>(e.arg));
          break;
        case kExchangeEnd:
          OnExchangeEnd(e.node);
          break;
        case kAckStart:
          OnAckStart(e.node);
          break;
        case kTxStart:
          if (static_cast<std::uint64_t>(e.arg) == nodes_[e.node].tx_ver) OnTxStart(e.node);
          break;
        case kArrival:
          OnArrival(e.node);
          break;
      }
    }
    return Finish();
  }

 private:
  double D(NodeId a, NodeId b) const { return dist_[a * nodes_.size() + b]; }
  double P(NodeId a, NodeId b) const { return power_[a * nodes_.size() + b]; }

  double Interval() const {
    return mac_.payload_bytes * 8.0 / traffic_.offered_load_bps * 1e9;
  }
  Time NextPoisson(NodeId i) {
    return now_ + std::max<Time>(1, static_cast<Time>(traffic_rng_[i].Exponential(Interval())));
  }

  void Push(Time t, EventKind kind, NodeId node, std::int64_t arg) {
    events_.push({t, kind, node, seq_++, arg});
  }

  // --- traffic ------------------------------------------------------------

  void Generate(NodeId i) {
    ++result_.generated;
    Node& node = nodes_[i];
    if (static_cast<int>(node.queue.size()) >= traffic_.queue_capacity) {
      ++result_.dropped_queue;
      return;
    }
    packets_.push_back({i, i});
    Enqueue(i, static_cast<std::int64_t>(packets_.size() - 1));
  }

  void Enqueue(NodeId i, std::int64_t pid) {
    Node& node = nodes_[i];
    node.queue.push_back(pid);
    if (node.queue.size() == 1 && !node.in_exchange) {
      DrawBackoff(i);
      TrySchedule(i);
    }
  }

  void OnArrival(NodeId i) {
    Generate(i);
    if (traffic_.arrival == ArrivalProcess::kCbr) {
      Push(now_ + std::max<Time>(1, static_cast<Time>(Interval())), kArrival, i, 0);
    } else if (traffic_.arrival == ArrivalProcess::kPoisson) {
      Push(NextPoisson(i), kArrival, i, 0);
    }
  }

  // --- channel access -----------------------------------------------------

  void DrawBackoff(NodeId i) {
    Node& node = nodes_[i];
    node.backoff = static_cast<int>(backoff_rng_[i].UniformInt(static_cast<std::uint32_t>(node.cw)));
    node.attempt_time = now_;
  }

  Time CountStart(const Node& node) const {
    return std::max(node.idle_start, node.attempt_time) + difs_;
  }

  void TrySchedule(NodeId i) {
    Node& node = nodes_[i];
    if (node.queue.empty() || node.in_exchange || node.cur_frame != kNone ||
        node.ack_pending || node.backoff == kNone || node.busy > 0) {
      return;
    }
    node.tx_at = CountStart(node) + node.backoff * slot_;
    ++node.tx_ver;
    Push(node.tx_at, kTxStart, i, static_cast<std::int64_t>(node.tx_ver));
  }

  void OnBusy(NodeId i) {
    Node& node = nodes_[i];
    // A countdown that expires at this very instant still fires.
    if (node.tx_at == kNever || node.tx_at == now_) return;
    const Time count_start = CountStart(node);
    if (now_ > count_start) {
      node.backoff = std::max<int>(0, node.backoff - static_cast<int>((now_ - count_start) / slot_));
    }
    node.tx_at = kNever;
    ++node.tx_ver;
  }

  void OnIdle(NodeId i) {
    Node& node = nodes_[i];
    node.idle_start = std::max(now_, node.nav);
    TrySchedule(i);
  }

  void OnTxStart(NodeId i) {
    Node& node = nodes_[i];
    node.tx_at = kNever;
    ++node.tx_ver;
    node.backoff = kNone;
    node.in_exchange = true;
    node.ack_ok = false;
    const std::int64_t pid = node.queue.front();
    StartFrame(i, node.next, FrameKind::kData, pid, now_, i, D(i, node.next));
  }

  void OnAckStart(NodeId i) {
    Node& node = nodes_[i];
    node.ack_pending = false;
    if (node.cur_frame != kNone) return;
    StartFrame(i, node.ack_to, FrameKind::kAck, -1, ack_xstart_[i], node.ack_to,
               D(i, node.ack_to));
  }

  void OnExchangeEnd(NodeId i) {
    Node& node = nodes_[i];
    node.in_exchange = false;
    if (node.ack_ok) {
      PopHead(i);
      node.cw = mac_.cw_min;
      node.retries = 0;
    } else if (++node.retries > mac_.retry_limit) {
      const std::int64_t pid = node.queue.front();
      if (packets_[static_cast<std::size_t>(pid)].holder == i) {
        ++result_.dropped_retry;
        packets_[static_cast<std::size_t>(pid)].holder = kNoRoute;
      }
      PopHead(i);
      node.cw = mac_.cw_min;
      node.retries = 0;
    } else {
      node.cw = std::min(2 * node.cw + 1, mac_.cw_max);
    }
    if (!node.queue.empty()) {
      DrawBackoff(i);
      TrySchedule(i);
    }
  }

  void PopHead(NodeId i) {
    Node& node = nodes_[i];
    node.queue.pop_front();
    if (traffic_.arrival == ArrivalProcess::kSaturated && node.generates) Generate(i);
  }

  // --- frames -------------------------------------------------------------

  int AllocFrame() {
    if (!free_frames_.empty()) {
      const int f = free_frames_.back();
      free_frames_.pop_back();
      frames_[static_cast<std::size_t>(f)] = Frame{};
      return f;
    }
    frames_.emplace_back();
    return static_cast<int>(frames_.size() - 1);
  }

  Frame& F(int f) { return frames_[static_cast<std::size_t>(f)]; }

  static void Blame(Frame& victim, const Frame& culprit) {
    victim.failed = true;
    if (!victim.has_culprit) {
      victim.has_culprit = true;
      victim.culprit_xstart = culprit.xstart;
      victim.culprit_xtx = culprit.xtx;
    }
  }

  // Whether frame g breaks the reception of frame f at node m.
  bool Interferes(const Frame& g, const Frame& f, NodeId m) const {
    return D(g.tx, m) <= (1.0 + cfg_.delta) * std::max(f.link_len, g.link_len);
  }

  void CheckSir(Frame& f, NodeId m, const Frame& trigger) {
    const double signal = P(f.tx, m);
    const double noise = interf_[m] - signal;
    if (noise > 0.0 && signal < cfg_.sir_threshold * noise) Blame(f, trigger);
  }

  // m has just locked onto f; the frames already on air may spoil it.
  void CheckExisting(int fi, NodeId m) {
    Frame& f = F(fi);
    if (f.dest != m) return;
    for (int gi : active_) {
      if (gi == fi) continue;
      const Frame& g = F(gi);
      if (Interferes(g, f, m)) Blame(f, g);
    }
    if (aggregate_ && !active_.empty()) {
      int strongest = kNone;
      for (int gi : active_) {
        if (gi != fi && (strongest == kNone || P(F(gi).tx, m) > P(F(strongest).tx, m))) {
          strongest = gi;
        }
      }
      if (strongest != kNone) CheckSir(f, m, F(strongest));
    }
  }

  void StartFrame(NodeId tx, NodeId dest, FrameKind kind, std::int64_t pid,
                  Time xstart, NodeId xtx, double link_len) {
    const int fi = AllocFrame();
    {
      Frame& f = F(fi);
      f.tx = tx;
      f.dest = dest;
      f.kind = kind;
      f.start = now_;
      f.end = now_ + (kind == FrameKind::kData ? data_time_ : ack_time_);
      f.xstart = xstart;
      f.xtx = xtx;
      f.link_len = link_len;
      f.pid = pid;
    }
    Node& self = nodes_[tx];
    self.cur_frame = fi;
    if (self.lock != kNone) {
      Frame& h = F(self.lock);
      if (h.dest == tx) Blame(h, F(fi));
      self.lock = kNone;
    }
    active_.push_back(fi);
    for (NodeId m : cs_list_[tx]) {
      if (++nodes_[m].busy == 1) OnBusy(m);
    }
    if (aggregate_) {
      for (NodeId m = 0; m < nodes_.size(); ++m) interf_[m] += P(tx, m);
    }
    for (NodeId m : affect_list_[tx]) {
      Node& node = nodes_[m];
      Frame& f = F(fi);
      if (node.cur_frame != kNone) {
        if (m == dest) Blame(f, F(node.cur_frame));
        continue;
      }
      const bool audible = D(tx, m) <= cfg_.cs_range;
      if (node.lock == kNone) {
        if (audible) {
          node.lock = fi;
          CheckExisting(fi, m);
        } else if (m == dest) {
          f.failed = true;
        }
        continue;
      }
      Frame& h = F(node.lock);
      if (h.dest == m) {
        if (Interferes(f, h, m)) Blame(h, f);
        if (aggregate_) CheckSir(h, m, f);
      }
      if (cfg_.rs_mode && audible && P(tx, m) >= cfg_.capture_ratio * P(h.tx, m)) {
        if (h.dest == m) Blame(h, f);
        node.lock = fi;
        CheckExisting(fi, m);
      } else if (m == dest) {
        Blame(f, h);
      }
    }
    Push(F(fi).end, kFrameEnd, tx, fi);
  }

  void CountCollision(const Frame& f) {
    if (f.xstart < warmup_) return;
    const bool countdown = f.has_culprit && f.culprit_xstart == f.xstart &&
                           D(f.culprit_xtx, f.xtx) <= cfg_.cs_range;
    if (countdown) {
      ++result_.collisions_countdown;
    } else {
      ++result_.collisions_hidden_node;
    }
  }

  void OnFrameEnd(int fi) {
    const Frame f = F(fi);
    active_.erase(std::find(active_.begin(), active_.end(), fi));
    Node& self = nodes_[f.tx];
    self.cur_frame = kNone;
    const Time lo = std::max(f.start, warmup_);
    if (f.end > lo) self.airtime += f.end - lo;
    if (aggregate_) {
      for (NodeId m = 0; m < nodes_.size(); ++m) interf_[m] -= P(f.tx, m);
    }
    const bool received = nodes_[f.dest].lock == fi && !f.failed;
    for (NodeId m : affect_list_[f.tx]) {
      if (nodes_[m].lock == fi) nodes_[m].lock = kNone;
    }
    for (NodeId m : cs_list_[f.tx]) {
      Node& node = nodes_[m];
      if (f.kind == FrameKind::kData) node.nav = std::max(node.nav, now_ + sifs_ + ack_time_);
      if (--node.busy == 0) OnIdle(m);
    }
    if (f.kind == FrameKind::kData) {
      Push(now_ + sifs_ + ack_time_, kExchangeEnd, f.tx, 0);
      if (received) {
        Accept(f.dest, f.tx, f.pid);
        Node& rx = nodes_[f.dest];
        rx.ack_pending = true;
        rx.ack_to = f.tx;
        if (ack_xstart_.size() < nodes_.size()) ack_xstart_.resize(nodes_.size());
        ack_xstart_[f.dest] = f.xstart;
        Push(now_ + sifs_, kAckStart, f.dest, 0);
      } else {
        CountCollision(f);
      }
    } else if (received) {
      nodes_[f.dest].ack_ok = true;
    } else {
      CountCollision(f);
    }
    free_frames_.push_back(fi);
  }

  void Accept(NodeId at, NodeId from, std::int64_t pid) {
    Node& node = nodes_[at];
    auto [it, fresh] = node.last_from.try_emplace(from, pid);
    if (!fresh && it->second == pid) return;  // duplicate after a lost ACK
    it->second = pid;
    Packet& p = packets_[static_cast<std::size_t>(pid)];
    if (at == topo_.sink) {
      p.holder = kNoRoute;
      ++result_.delivered;
      if (now_ >= warmup_) {
        delivered_bits_ += mac_.payload_bytes * 8.0;
        flow_bits_[p.origin] += mac_.payload_bytes * 8.0;
      }
      return;
    }
    if (static_cast<int>(node.queue.size()) >= traffic_.queue_capacity) {
      p.holder = kNoRoute;
      ++result_.dropped_queue;
      return;
    }
    p.holder = at;
    Enqueue(at, pid);
  }

  SimResult Finish() {
    const double window = static_cast<double>(end_time_ - warmup_) * 1e-9;
    result_.sim_duration_s = opt_.duration_s;
    result_.measured_s = window;
    result_.aggregate_throughput_bps = delivered_bits_ / window;
    for (NodeId s : topo_.Sources()) {
      const auto it = flow_bits_.find(s);
      result_.per_flow_throughput_bps[s] = it == flow_bits_.end() ? 0.0 : it->second / window;
    }
    for (NodeId i = 0; i < nodes_.size(); ++i) {
      Node& node = nodes_[i];
      // Frames still on air count up to the horizon.
      if (node.cur_frame != kNone) {
        const Frame& f = F(node.cur_frame);
        const Time lo = std::max(f.start, warmup_);
        if (end_time_ > lo) node.airtime += std::min(end_time_, f.end) - lo;
      }
      result_.per_node_airtime[i] =
          std::clamp(static_cast<double>(node.airtime) * 1e-9 / window, 0.0, 1.0);
      for (std::int64_t pid : node.queue) {
        if (packets_[static_cast<std::size_t>(pid)].holder == i) ++result_.queued_at_end;
      }
    }
    return result_;
  }

  const Topology& topo_;
  RadioConfig cfg_;
  MacParams mac_;
  TrafficSpec traffic_;
  SimOptions opt_;
  Time end_time_ = 0, warmup_ = 0, slot_ = 0, sifs_ = 0, difs_ = 0;
  Time data_time_ = 0, ack_time_ = 0;
  bool aggregate_ = false;
  Time now_ = 0;
  std::uint64_t seq_ = 0;
  std::vector<double> dist_, power_, interf_;
  std::vector<Node> nodes_;
  std::vector<Rng> backoff_rng_, traffic_rng_;
  std::vector<std::vector<NodeId>> cs_list_, affect_list_;
  std::vector<Frame> frames_;
  std::vector<int> free_frames_, active_;
  std::vector<Packet> packets_;
  std::vector<Time> ack_xstart_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
  double delivered_bits_ = 0.0;
  std::map<NodeId, double> flow_bits_;
  SimResult result_;
};

}  // namespace

double MacParams::DataTimeUs() const {
  return phy_header_us + (payload_bytes + overhead_bytes) * 8.0 / data_rate_bps * 1e6;
}

void MacParams::Validate() const {
  if (!(slot_time_us > 0 && sifs_us > 0 && difs_us > 0 && phy_header_us > 0 &&
        ack_time_us > 0 && data_rate_bps > 0)) {
    Fail(ErrorCode::kInvalidArgument, "MAC times and data rate must be > 0");
  }
  if (cw_min < 1 || cw_max < cw_min) {
    Fail(ErrorCode::kInvalidArgument, "need 1 <= cw_min <= cw_max");
  }
  if (payload_bytes < 1 || overhead_bytes < 0 || retry_limit < 0) {
    Fail(ErrorCode::kInvalidArgument, "bad payload, overhead or retry limit");
  }
}

const char* ArrivalName(ArrivalProcess arrival) {
  switch (arrival) {
    case ArrivalProcess::kCbr:
      return "cbr";
    case ArrivalProcess::kPoisson:
      return "poisson";
    case ArrivalProcess::kSaturated:
      return "saturated";
  }
  return "cbr";
}

ArrivalProcess ParseArrival(const std::string& name) {
  if (name == "cbr") return ArrivalProcess::kCbr;
  if (name == "poisson") return ArrivalProcess::kPoisson;
  if (name == "saturated") return ArrivalProcess::kSaturated;
  Fail(ErrorCode::kInvalidArgument, "arrival must be cbr, poisson or saturated");
}

void TrafficSpec::Validate() const {
  if (!(offered_load_bps >= 0.0) || !std::isfinite(offered_load_bps)) {
    Fail(ErrorCode::kInvalidArgument, "offered load must be finite and >= 0");
  }
  if (queue_capacity < 1) Fail(ErrorCode::kInvalidArgument, "queue capacity must be >= 1");
}

void SimOptions::Validate() const {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    Fail(ErrorCode::kInvalidArgument, "duration must be > 0");
  }
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "warm-up fraction must lie in [0, 1)");
  }
}

SimResult Simulate(const Topology& topology, const RadioConfig& config,
                   const MacParams& mac, const TrafficSpec& traffic,
                   const SimOptions& options) {
  config.Validate();
  mac.Validate();
  traffic.Validate();
  options.Validate();
  if (topology.next_hop.size() != topology.size()) {
    Fail(ErrorCode::kInvalidArgument, "topology has no route table");
  }
  Simulation sim(topology, config, mac, traffic, options);
  return sim.Run();
}

double MeasureLinkCapacity(const RadioConfig& config, const MacParams& mac,
                           const SimOptions& options) {
  Topology t = BuildLinearChain(1, config.tx_range, ChainRoles::kAllSources);
  TrafficSpec traffic;
  traffic.arrival = ArrivalProcess::kSaturated;
  SimOptions o = options;
  o.mode = InterferenceMode::kPairwise;
  return Simulate(t, config, mac, traffic, o).aggregate_throughput_bps;
}

std::vector<double> GeometricGrid(double lo, double hi, int points) {
  if (points < 1 || !(lo > 0.0) || !(hi >= lo)) {
    Fail(ErrorCode::kInvalidArgument, "grid needs points >= 1 and 0 < lo <= hi");
  }
  std::vector<double> g;
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    g.push_back(lo * std::pow(hi / lo, f));
  }
  return g;
}

std::vector<double> DefaultLoadGrid(double l_sim, int n_sources, int points) {
  if (n_sources < 1) Fail(ErrorCode::kInvalidArgument, "need at least one source");
  const double per = l_sim / n_sources;
  return GeometricGrid(0.05 * per, 1.2 * per, points);
}

SweepResult SweepLoad(const Topology& topology, const RadioConfig& config,
                      const MacParams& mac, const TrafficSpec& traffic,
                      const std::vector<double>& load_grid,
                      const SimOptions& options) {
  if (load_grid.empty()) Fail(ErrorCode::kInvalidArgument, "empty load grid");
  SweepResult out;
  for (std::size_t i = 0; i < load_grid.size(); ++i) {
    TrafficSpec t = traffic;
    t.offered_load_bps = load_grid[i];
    SimOptions o = options;
    o.seed = DeriveSeed(options.seed, kSweepStream, i);
    out.curve.push_back({load_grid[i], Simulate(topology, config, mac, t, o)});
    const auto& best = out.curve[out.best_index];
    const auto& cur = out.curve.back();
    const double a = cur.result.aggregate_throughput_bps;
    const double b = best.result.aggregate_throughput_bps;
    if (a > b || (a == b && cur.offered_load_bps < best.offered_load_bps)) {
      out.best_index = i;
    }
  }
  return out;
}

SweepResult SweepLoadRefined(const Topology& topology, const RadioConfig& config,
                             const MacParams& mac, const TrafficSpec& traffic,
                             const std::vector<double>& coarse_grid,
                             int refine_points, const SimOptions& options) {
  if (refine_points < 0) Fail(ErrorCode::kInvalidArgument, "refine_points must be >= 0");
  std::vector<double> grid = coarse_grid;
  std::sort(grid.begin(), grid.end());
  SweepResult out = SweepLoad(topology, config, mac, traffic, grid, options);
  const std::size_t b = out.best_index;
  const double lo = b > 0 ? grid[b - 1] : grid[b];
  const double hi = b + 1 < grid.size() ? grid[b + 1] : grid[b];
  if (refine_points == 0 || !(hi > lo)) return out;
  for (int j = 1; j <= refine_points; ++j) {
    const double load = lo + (hi - lo) * j / (refine_points + 1);
    TrafficSpec t = traffic;
    t.offered_load_bps = load;
    SimOptions o = options;
    o.seed = DeriveSeed(options.seed, kSweepStream, grid.size() + static_cast<std::size_t>(j));
    out.curve.push_back({load, Simulate(topology, config, mac, t, o)});
    const auto& best = out.curve[out.best_index];
    const auto& cur = out.curve.back();
    const double x = cur.result.aggregate_throughput_bps;
    const double y = best.result.aggregate_throughput_bps;
    if (x > y || (x == y && cur.offered_load_bps < best.offered_load_bps)) {
      out.best_index = out.curve.size() - 1;
    }
  }
  return out;
}

std::vector<CsRangeRow> CsRangeSweep(const Topology& topology,
                                     const RadioConfig& config,
                                     const MacParams& mac,
                                     const TrafficSpec& traffic,
                                     const std::vector<double>& cs_grid,
                                     const std::vector<double>& load_grid,
                                     const SimOptions& options) {
  std::vector<CsRangeRow> rows;
  for (double cs : cs_grid) {
    RadioConfig c = config;
    c.cs_range = cs;
    c.rs_mode = true;
    CsRangeRow row;
    row.cs_range = cs;
    row.hfd = HiddenNodePairs(topology, topology.RouteLinks(), c).empty();
    row.sweep = SweepLoad(topology, c, mac, traffic, load_grid, options);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string CsvHeader() {
  return "csrange,offered_load,throughput_bps,throughput_over_L,hn_collisions,"
         "countdown_collisions\n";
}

std::string CsvRow(double cs_range, double offered_load_bps, const SimResult& r,
                   double link_capacity_bps) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%llu,%llu\n", cs_range,
                offered_load_bps, r.aggregate_throughput_bps,
                link_capacity_bps > 0 ? r.aggregate_throughput_bps / link_capacity_bps : 0.0,
                static_cast<unsigned long long>(r.collisions_hidden_node),
                static_cast<unsigned long long>(r.collisions_countdown));
  return buf;
}

}  // namespace m2o
