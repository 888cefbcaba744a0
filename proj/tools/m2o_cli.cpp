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


// m2o command-line tool. Talks to the toolkit only through the C API.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "m2o/m2o.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

// Raised for bad flag values; exits with status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  ApiError(m2o_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  m2o_status status;
};

void Check(m2o_status s) {
  if (s != M2O_OK) throw ApiError(s, m2o_last_error());
}

struct TopologyDeleter {
  void operator()(m2o_topology* t) const { m2o_topology_free(t); }
};
struct ScheduleDeleter {
  void operator()(m2o_schedule* s) const { m2o_schedule_free(s); }
};
struct SelectionDeleter {
  void operator()(m2o_selection* s) const { m2o_selection_free(s); }
};
using TopologyPtr = std::unique_ptr<m2o_topology, TopologyDeleter>;
using SchedulePtr = std::unique_ptr<m2o_schedule, ScheduleDeleter>;
using SelectionPtr = std::unique_ptr<m2o_selection, SelectionDeleter>;

std::string TakeString(char* s) {
  std::string out(s);
  m2o_string_free(s);
  return out;
}

TopologyPtr LoadTopology(const std::string& path) {
  m2o_topology* t = nullptr;
  Check(m2o_topology_read_file(path.c_str(), &t));
  return TopologyPtr(t);
}

// Output goes to `path`, or stdout when it is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw ApiError(M2O_ERR_IO, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool to_stdout() const { return !file_.is_open(); }

 private:
  std::ofstream file_;
};

std::string Fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// ---------------------------------------------------------------------------
// SVG output

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

void WriteCurvePlot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<Series>& series) {
  std::ofstream out(path);
  if (!out) throw ApiError(M2O_ERR_IO, "cannot write " + path);
  const double W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 55;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y1 = 0.0;
  for (const Series& s : series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) y1 = std::max(y1, v);
  }
  if (!(x1 > x0)) x0 -= 1.0, x1 += 1.0;
  if (!(y1 > 0.0)) y1 = 1.0;
  y1 *= 1.08;
  auto px = [&](double v) { return ml + (v - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - v / y1 * (H - mt - mb); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5, yv = y1 * i / 5;
    out << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 16
        << "\" text-anchor=\"middle\">" << Fmt("%.3g", xv) << "</text>\n"
        << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
        << Fmt("%.3g", yv) << "</text>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << py(yv) << "\" x2=\"" << W - mr
        << "\" y2=\"" << py(yv) << "\" stroke=\"#ddd\"/>\n";
  }
  out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\">" << xlabel << "</text>\n"
      << "<text x=\"16\" y=\"" << (mt + H - mb) / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << (mt + H - mb) / 2 << ")\">" << ylabel
      << "</text>\n";
  for (size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kPalette[k % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    out << "\"/>\n";
    for (size_t i = 0; i < s.x.size(); ++i) {
      out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    if (!s.name.empty()) {
      out << "<text x=\"" << W - mr - 4 << "\" y=\"" << mt + 14 * (k + 1)
          << "\" text-anchor=\"end\" fill=\"" << color << "\">" << s.name << "</text>\n";
    }
  }
  out << "</svg>\n";
}

void WriteTopologyPlot(const std::string& path, const m2o_topology* t) {
  std::ofstream out(path);
  if (!out) throw ApiError(M2O_ERR_IO, "cannot write " + path);
  const size_t n = m2o_topology_node_count(t);
  std::vector<double> xs(n), ys(n);
  std::vector<m2o_role> roles(n);
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (uint32_t i = 0; i < n; ++i) {
    Check(m2o_topology_node(t, i, &xs[i], &ys[i], &roles[i]));
    lo_x = std::min(lo_x, xs[i]), hi_x = std::max(hi_x, xs[i]);
    lo_y = std::min(lo_y, ys[i]), hi_y = std::max(hi_y, ys[i]);
  }
  const double S = 600, pad = 20;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  auto px = [&](double v) { return pad + (v - lo_x) / span * (S - 2 * pad); };
  auto py = [&](double v) { return S - pad - (v - lo_y) / span * (S - 2 * pad); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << S << "\" height=\"" << S
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (size_t i = 0; i < m2o_topology_link_count(t); ++i) {
    m2o_link l;
    Check(m2o_topology_link(t, i, &l));
    if (l.tx > l.rx) continue;
    out << "<line x1=\"" << px(xs[l.tx]) << "\" y1=\"" << py(ys[l.tx]) << "\" x2=\""
        << px(xs[l.rx]) << "\" y2=\"" << py(ys[l.rx]) << "\" stroke=\"#ccc\"/>\n";
  }
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t next = 0;
    Check(m2o_topology_next_hop(t, i, &next));
    if (next == UINT32_MAX) continue;
    out << "<line x1=\"" << px(xs[i]) << "\" y1=\"" << py(ys[i]) << "\" x2=\""
        << px(xs[next]) << "\" y2=\"" << py(ys[next])
        << "\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
  }
  for (uint32_t i = 0; i < n; ++i) {
    const char* color = roles[i] == M2O_ROLE_SINK     ? "#d62728"
                        : roles[i] == M2O_ROLE_RELAY  ? "#1f77b4"
                                                      : "#2ca02c";
    out << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i]) << "\" r=\""
        << (roles[i] == M2O_ROLE_SINK ? 6 : 3.5) << "\" fill=\"" << color << "\"/>\n";
  }
  out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Shared flag groups

struct RadioFlags {
  double tx_range = 250.0;
  std::optional<double> cs_range;
  bool no_rs = false;
  double delta = 0.78;

  void Add(CLI::App* app) {
    app->add_option("--tx-range", tx_range, "transmission range (m)");
    app->add_option("--csrange", cs_range, "carrier-sensing range (m)");
    app->add_flag("--no-rs", no_rs, "disable receiver restart");
    app->add_option("--delta", delta, "interference distance margin");
  }
  m2o_radio_config Config(double default_cs) const {
    m2o_radio_config c;
    m2o_radio_config_default(&c);
    c.tx_range = tx_range;
    c.cs_range = cs_range.value_or(default_cs);
    c.rs_mode = no_rs ? 0 : 1;
    c.delta = delta;
    return c;
  }
};

struct SimFlags {
  double duration = 20.0;
  uint64_t seed = 1;
  std::string mode = "pairwise";
  std::string arrival = "cbr";
  int queue = 50;

  void Add(CLI::App* app) {
    app->add_option("--duration", duration, "simulated seconds");
    app->add_option("--seed", seed, "random seed");
    app->add_option("--mode", mode, "interference mode: pairwise or aggregate");
    app->add_option("--arrival", arrival, "cbr, poisson or saturated");
    app->add_option("--queue", queue, "queue capacity (packets)");
  }
  m2o_sim_options Options() const {
    m2o_sim_options o;
    m2o_sim_options_default(&o);
    o.duration_s = duration;
    o.seed = seed;
    Check(m2o_mode_parse(mode.c_str(), &o.mode));
    return o;
  }
  m2o_traffic Traffic(double load) const {
    m2o_traffic t;
    m2o_traffic_default(&t);
    Check(m2o_arrival_parse(arrival.c_str(), &t.arrival));
    t.queue_capacity = queue;
    t.offered_load_bps = load;
    return t;
  }
};

struct GridFlags {
  std::optional<double> load_min;
  std::optional<double> load_max;
  int load_points = 20;
  int refine = 0;

  void Add(CLI::App* app) {
    app->add_option("--load-min", load_min, "lowest per-source offered load (bit/s)");
    app->add_option("--load-max", load_max, "highest per-source offered load (bit/s)");
    app->add_option("--load-points", load_points, "number of grid loads");
    app->add_option("--refine", refine, "extra loads around the coarse peak");
  }
  std::vector<double> Grid(double l_sim, int n_sources) const {
    if (load_points < 1) throw UsageError("--load-points must be >= 1");
    std::vector<double> g(load_points);
    if (!load_min && !load_max) {
      Check(m2o_default_load_grid(l_sim, n_sources, load_points, g.data()));
      return g;
    }
    if (!load_min || !load_max) throw UsageError("give both --load-min and --load-max");
    Check(m2o_geometric_grid(*load_min, *load_max, load_points, g.data()));
    return g;
  }
};

size_t SourceCount(const m2o_topology* t) {
  size_t n = 0;
  Check(m2o_topology_sources(t, nullptr, 0, &n));
  return n;
}

std::vector<m2o_link> RouteLinks(const m2o_topology* t) {
  size_t n = 0;
  Check(m2o_topology_route_links(t, nullptr, 0, &n));
  std::vector<m2o_link> links(n);
  Check(m2o_topology_route_links(t, links.data(), n, &n));
  return links;
}

double MinHfdRoutes(const m2o_topology* t, const m2o_radio_config& cfg) {
  const std::vector<m2o_link> links = RouteLinks(t);
  double cs = 0.0;
  Check(m2o_min_hfd_csrange(t, links.data(), links.size(), &cfg, &cs));
  return cs;
}

size_t HiddenPairsOnRoutes(const m2o_topology* t, const m2o_radio_config& cfg) {
  const std::vector<m2o_link> links = RouteLinks(t);
  size_t n = 0;
  Check(m2o_hidden_node_pairs(t, links.data(), links.size(), &cfg, nullptr, 0, &n));
  return n;
}

double LinkCapacity(const m2o_radio_config& cfg, const SimFlags& sim) {
  m2o_mac_params mac;
  m2o_mac_params_default(&mac);
  const m2o_sim_options o = sim.Options();
  double l = 0.0;
  Check(m2o_measure_link_capacity(&cfg, &mac, &o, &l));
  return l;
}

std::string CsvHeader() {
  return "csrange,offered_load,throughput_bps,throughput_over_L,hn_collisions,"
         "countdown_collisions\n";
}

std::string CsvRow(double cs, const m2o_sweep_point& p, double l_sim) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%llu,%llu\n", cs,
                p.offered_load_bps, p.result.aggregate_throughput_bps,
                l_sim > 0 ? p.result.aggregate_throughput_bps / l_sim : 0.0,
                static_cast<unsigned long long>(p.result.collisions_hidden_node),
                static_cast<unsigned long long>(p.result.collisions_countdown));
  return buf;
}

struct Sweep {
  std::vector<m2o_sweep_point> points;
  size_t best = 0;
};

Sweep RunSweep(const m2o_topology* t, const m2o_radio_config& cfg, const SimFlags& sim,
               const std::vector<double>& grid, int refine) {
  if (refine < 0) throw UsageError("--refine must be >= 0");
  m2o_mac_params mac;
  m2o_mac_params_default(&mac);
  const m2o_traffic traffic = sim.Traffic(0.0);
  const m2o_sim_options o = sim.Options();
  Sweep s;
  s.points.resize(grid.size() + refine);
  size_t count = 0;
  Check(m2o_sweep_load(t, &cfg, &mac, &traffic, grid.data(), grid.size(), refine, &o,
                       s.points.data(), &count, &s.best));
  s.points.resize(count);
  std::sort(s.points.begin(), s.points.end(), [](const auto& a, const auto& b) {
    return a.offered_load_bps < b.offered_load_bps;
  });
  for (size_t i = 0; i < s.points.size(); ++i) {
    if (s.points[i].result.aggregate_throughput_bps >
            s.points[s.best].result.aggregate_throughput_bps ||
        i == 0) {
      s.best = i;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateFlags {
  std::string kind;
  std::string out;
  std::string plot;
  uint64_t seed = 1;
  std::optional<int> chains, hops, n, sources, n_outer, n_inner;
  std::optional<double> d0, d1, d, bend, radius, tx_range, outer_radius, inner_radius,
      min_sep, position_error;
  std::string roles = "all";
};

TopologyPtr Generate(const GenerateFlags& f, std::string* note) {
  m2o_topology* t = nullptr;
  const std::string& k = f.kind;
  if (k == "canonical") {
    const int hops = f.hops.value_or(2);
    if (hops < 1) throw UsageError("--hops must be >= 1");
    const double d0 = f.d0.value_or(250.0);
    std::vector<double> sp(hops, f.d.value_or(d0));
    sp[0] = d0;
    if (hops > 1) sp[1] = f.d1.value_or(f.d.value_or(d0));
    Check(m2o_topology_canonical(f.chains.value_or(3), sp.data(), sp.size(), &t));
  } else if (k == "chain") {
    m2o_chain_roles roles;
    if (f.roles == "all") {
      roles = M2O_CHAIN_ALL_SOURCES;
    } else if (f.roles == "outermost") {
      roles = M2O_CHAIN_OUTERMOST_ONLY;
    } else if (f.roles == "third") {
      roles = M2O_CHAIN_FROM_THIRD_NODE;
    } else {
      throw UsageError("--roles must be all, outermost or third");
    }
    Check(m2o_topology_linear_chain(f.n.value_or(4), f.d.value_or(250.0), roles, &t));
  } else if (k == "two_chain") {
    Check(m2o_topology_two_chain(f.d.value_or(250.0), f.bend.value_or(0.82 * kPi),
                                 f.hops.value_or(7), &t));
  } else if (k == "random_disk") {
    Check(m2o_topology_random_disk(f.radius.value_or(1.0), f.tx_range.value_or(0.4),
                                   f.sources.value_or(6), f.seed, &t));
  } else if (k == "centric") {
    m2o_centric_params p;
    m2o_centric_params_default(&p);
    p.outer_radius = f.outer_radius.value_or(p.outer_radius);
    p.inner_radius = f.inner_radius.value_or(p.inner_radius);
    p.num_chains = f.chains.value_or(p.num_chains);
    p.hops_per_chain = f.hops.value_or(p.hops_per_chain);
    p.d0 = f.d0.value_or(p.d0);
    p.d1 = f.d1.value_or(p.d1);
    p.d = f.d.value_or(p.d);
    p.min_sep = f.min_sep.value_or(p.min_sep);
    p.n_outer = f.n_outer.value_or(p.n_outer);
    p.tx_range = f.tx_range.value_or(p.tx_range);
    p.seed = f.seed;
    Check(m2o_topology_centric(&p, &t));
  } else if (k == "manifold") {
    m2o_manifold_params p;
    m2o_manifold_params_default(&p);
    p.outer_radius = f.outer_radius.value_or(p.outer_radius);
    p.inner_radius = f.inner_radius.value_or(p.inner_radius);
    p.d0 = f.d0.value_or(p.d0);
    p.d1 = f.d1.value_or(p.d1);
    p.min_sep = f.min_sep.value_or(p.min_sep);
    p.n_outer = f.n_outer.value_or(p.n_outer);
    p.tx_range = f.tx_range.value_or(p.tx_range);
    p.position_error = f.position_error.value_or(p.position_error);
    p.seed = f.seed;
    int core = 0;
    Check(m2o_manifold_core_size(&p, &core));
    *note = "inner relays " + std::to_string(core) + "\n";
    Check(m2o_topology_manifold(&p, &t));
  } else if (k == "benchmark") {
    m2o_benchmark_params p;
    m2o_benchmark_params_default(&p);
    p.outer_radius = f.outer_radius.value_or(p.outer_radius);
    p.inner_radius = f.inner_radius.value_or(p.inner_radius);
    p.n_inner = f.n_inner.value_or(p.n_inner);
    p.min_sep = f.min_sep.value_or(p.min_sep);
    p.n_outer = f.n_outer.value_or(p.n_outer);
    p.tx_range = f.tx_range.value_or(p.tx_range);
    p.seed = f.seed;
    Check(m2o_topology_benchmark(&p, &t));
  } else if (k == "hfp_example") {
    uint32_t a = 0, b = 0;
    Check(m2o_topology_hfp_example(f.d0.value_or(250.0), f.hops.value_or(2), &t, &a, &b));
    *note = "spur nodes A=" + std::to_string(a) + " B=" + std::to_string(b) + "\n";
  } else {
    throw UsageError("unknown topology kind: " + k);
  }
  return TopologyPtr(t);
}

void CmdGenerate(const GenerateFlags& f) {
  std::string note;
  TopologyPtr t = Generate(f, &note);
  std::ostringstream report;
  report << "nodes " << m2o_topology_node_count(t.get()) << "\nlinks "
         << m2o_topology_link_count(t.get()) << "\nsources " << SourceCount(t.get())
         << '\n'
         << note;
  Output out(f.out);
  out.stream() << TakeString([&] {
    char* s = nullptr;
    Check(m2o_topology_serialize(t.get(), &s));
    return s;
  }());
  (out.to_stdout() ? std::cerr : std::cout) << report.str();
  if (!f.plot.empty()) WriteTopologyPlot(f.plot, t.get());
}

// ---------------------------------------------------------------------------
// analyze

void CmdAnalyze(const std::string& path, const RadioFlags& radio, const std::string& out) {
  TopologyPtr t = LoadTopology(path);
  m2o_radio_config cfg = radio.Config(radio.tx_range);
  nlohmann::ordered_json j;
  j["nodes"] = m2o_topology_node_count(t.get());
  j["links"] = m2o_topology_link_count(t.get());
  j["sources"] = SourceCount(t.get());
  j["route_links"] = RouteLinks(t.get()).size();
  if (cfg.rs_mode != 0) {
    const double hfd = MinHfdRoutes(t.get(), cfg);
    j["min_hfd_csrange"] = hfd;
    j["min_hfd_csrange_over_tx"] = hfd / cfg.tx_range;
    double all = 0.0;
    Check(m2o_min_hfd_csrange(t.get(), nullptr, 0, &cfg, &all));
    j["min_hfd_csrange_all_links"] = all;
    if (!radio.cs_range) cfg.cs_range = std::max(hfd, cfg.tx_range);
  } else {
    j["min_hfd_csrange"] = nullptr;
    if (!radio.cs_range) throw UsageError("--csrange is required with --no-rs");
  }
  j["csrange"] = cfg.cs_range;
  j["rs_mode"] = cfg.rs_mode != 0;
  j["hn_pairs"] = HiddenPairsOnRoutes(t.get(), cfg);
  m2o_capacity_report rep;
  const m2o_status s = m2o_upper_bound(t.get(), &cfg, &rep);
  if (s == M2O_OK) {
    j["ring2_concurrency"] = rep.ring2_concurrency;
    j["bound_fraction"] = rep.bound_fraction;
    j["equal_length"] = rep.equal_length != 0;
  } else if (s == M2O_ERR_DOMAIN) {
    j["ring2_concurrency"] = nullptr;
    j["bound_fraction"] = nullptr;
    j["bound_note"] = m2o_last_error();
  } else {
    Check(s);
  }
  Output o(out);
  o.stream() << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// verify-schedule

int CmdVerify(const std::string& topo_path, const std::string& sched_path,
              const std::string& builtin, int hops, const RadioFlags& radio,
              const std::string& mode_name) {
  TopologyPtr t = LoadTopology(topo_path);
  m2o_schedule* raw = nullptr;
  if (!builtin.empty()) {
    if (!sched_path.empty()) throw UsageError("give a schedule file or --builtin, not both");
    if (builtin == "fig9") {
      Check(m2o_schedule_fig9(hops, &raw));
    } else if (builtin == "fig12") {
      Check(m2o_schedule_fig12(hops, &raw));
    } else if (builtin == "chain") {
      Check(m2o_schedule_chain(hops, &raw));
    } else {
      throw UsageError("--builtin must be fig9, fig12 or chain");
    }
  } else {
    if (sched_path.empty()) throw UsageError("a schedule file or --builtin is required");
    Check(m2o_schedule_read_file(sched_path.c_str(), &raw));
  }
  SchedulePtr sched(raw);
  m2o_radio_config cfg = radio.Config(radio.tx_range);
  if (!radio.cs_range) cfg.cs_range = std::max(MinHfdRoutes(t.get(), cfg), cfg.tx_range);
  m2o_mode mode;
  Check(m2o_mode_parse(mode_name.c_str(), &mode));
  size_t n = 0;
  Check(m2o_verify_schedule(t.get(), sched.get(), &cfg, mode, nullptr, 0, &n));
  std::vector<m2o_violation> v(n);
  Check(m2o_verify_schedule(t.get(), sched.get(), &cfg, mode, v.data(), n, &n));
  std::cout << "csrange " << Fmt("%.6f", cfg.cs_range) << "\nframe_slots "
            << m2o_schedule_frame_slots(sched.get()) << "\nviolations " << n << '\n';
  for (const m2o_violation& x : v) {
    std::cout << "  slot " << x.slot << ": " << x.a.tx << "->" << x.a.rx << " vs "
              << x.b.tx << "->" << x.b.rx << " " << x.kind;
    if (x.inequality > 0) std::cout << " (inequality " << x.inequality << ")";
    std::cout << '\n';
  }
  if (n == 0) {
    double agg = 0.0, per = 0.0;
    Check(m2o_schedule_throughput(t.get(), sched.get(), &cfg, &agg, &per));
    std::cout << "valid true\nthroughput_over_L " << Fmt("%.6f", agg / cfg.link_capacity)
              << "\nper_source_over_L " << Fmt("%.6f", per / cfg.link_capacity) << '\n';
    return 0;
  }
  std::cout << "valid false\n";
  return 1;
}

// ---------------------------------------------------------------------------
// simulate / sweep / csrange-sweep

double DefaultCs(const m2o_topology* t, const RadioFlags& radio) {
  if (radio.cs_range) return *radio.cs_range;
  if (radio.no_rs) return 550.0 * radio.tx_range / 250.0;
  return std::max(MinHfdRoutes(t, radio.Config(radio.tx_range)), radio.tx_range);
}

void CmdSimulate(const std::string& path, const RadioFlags& radio, const SimFlags& sim,
                 double load, const std::string& out) {
  TopologyPtr t = LoadTopology(path);
  const m2o_radio_config cfg = radio.Config(DefaultCs(t.get(), radio));
  m2o_mac_params mac;
  m2o_mac_params_default(&mac);
  const m2o_traffic traffic = sim.Traffic(load);
  const m2o_sim_options o = sim.Options();
  m2o_sweep_point p{load, {}};
  Check(m2o_simulate(t.get(), &cfg, &mac, &traffic, &o, &p.result));
  const double l_sim = LinkCapacity(cfg, sim);
  Output w(out);
  w.stream() << CsvHeader() << CsvRow(cfg.cs_range, p, l_sim);
  std::cerr << "L_sim " << Fmt("%.1f", l_sim) << " bit/s, delivered "
            << p.result.delivered << " of " << p.result.generated << " packets\n";
}

void CmdSweep(const std::string& path, const RadioFlags& radio, const SimFlags& sim,
              const GridFlags& grid, const std::string& out, const std::string& plot) {
  TopologyPtr t = LoadTopology(path);
  const m2o_radio_config cfg = radio.Config(DefaultCs(t.get(), radio));
  const double l_sim = LinkCapacity(cfg, sim);
  const Sweep s = RunSweep(t.get(), cfg, sim,
                           grid.Grid(l_sim, static_cast<int>(SourceCount(t.get()))),
                           grid.refine);
  Output w(out);
  w.stream() << CsvHeader();
  Series curve{"csrange " + Fmt("%.0f", cfg.cs_range), {}, {}};
  for (const m2o_sweep_point& p : s.points) {
    w.stream() << CsvRow(cfg.cs_range, p, l_sim);
    curve.x.push_back(p.offered_load_bps / 1e3);
    curve.y.push_back(p.result.aggregate_throughput_bps / l_sim);
  }
  const m2o_sweep_point& b = s.points[s.best];
  std::cerr << "peak " << Fmt("%.4f", b.result.aggregate_throughput_bps / l_sim)
            << " L_sim at " << Fmt("%.1f", b.offered_load_bps) << " bit/s per source (L_sim "
            << Fmt("%.1f", l_sim) << ")\n";
  if (!plot.empty()) {
    WriteCurvePlot(plot, "Throughput vs offered load", "offered load per source (kbit/s)",
                   "throughput / L_sim", {curve});
  }
}

void CmdCsRangeSweep(const std::string& path, const RadioFlags& radio, const SimFlags& sim,
                     const GridFlags& grid, std::vector<double> cs_list, double cs_min,
                     double cs_max, double cs_step, const std::string& out,
                     const std::string& plot) {
  TopologyPtr t = LoadTopology(path);
  if (cs_list.empty()) {
    if (!(cs_step > 0) || !(cs_max >= cs_min) || !(cs_min > 0)) {
      throw UsageError("need --cs-min <= --cs-max and --cs-step > 0, or --cs-list");
    }
    for (double c = cs_min; c <= cs_max + 1e-9; c += cs_step) cs_list.push_back(c);
  }
  RadioFlags rs = radio;
  rs.no_rs = false;
  const m2o_radio_config base = rs.Config(cs_list.front());
  const double l_sim = LinkCapacity(base, sim);
  const std::vector<double> loads =
      grid.Grid(l_sim, static_cast<int>(SourceCount(t.get())));
  Output w(out);
  w.stream() << CsvHeader();
  Series peak{"peak", {}, {}};
  std::cerr << "csrange,hfd,peak_over_L\n";
  for (double cs : cs_list) {
    m2o_radio_config cfg = base;
    cfg.cs_range = cs;
    const Sweep s = RunSweep(t.get(), cfg, sim, loads, grid.refine);
    for (const m2o_sweep_point& p : s.points) w.stream() << CsvRow(cs, p, l_sim);
    const double best = s.points[s.best].result.aggregate_throughput_bps / l_sim;
    const bool hfd = HiddenPairsOnRoutes(t.get(), cfg) == 0;
    std::cerr << Fmt("%.1f", cs) << ',' << (hfd ? "yes" : "no") << ','
              << Fmt("%.4f", best) << '\n';
    peak.x.push_back(cs);
    peak.y.push_back(best);
  }
  if (!plot.empty()) {
    WriteCurvePlot(plot, "Peak throughput vs carrier-sensing range", "csrange (m)",
                   "peak throughput / L_sim", {peak});
  }
}

// ---------------------------------------------------------------------------
// hfp

void CmdHfp(const std::string& path, const std::string& scheme_arg, uint64_t budget,
            bool simulate, const RadioFlags& radio, const SimFlags& sim,
            const GridFlags& grid, const std::string& out, const std::string& csv) {
  TopologyPtr t = LoadTopology(path);
  std::vector<m2o_scheme> schemes;
  if (scheme_arg == "all") {
    schemes = {M2O_SCHEME_FIXED_378, M2O_SCHEME_MIN_HFD_ALL_LINKS, M2O_SCHEME_HFP_SUBSET};
  } else {
    m2o_scheme s;
    if (m2o_scheme_parse(scheme_arg.c_str(), &s) != M2O_OK) {
      throw UsageError("--scheme must be 1, 2, 3 or all");
    }
    schemes = {s};
  }
  m2o_radio_config cfg = radio.Config(550.0);
  double l_sim = 0.0;
  if (simulate) l_sim = LinkCapacity(cfg, sim);
  Output sel_out(out.empty() ? std::string() : out);
  std::ostringstream table;
  table << "scheme,csrange,cs_over_tx,objective,active_links,budget_exhausted,"
           "throughput_bps,throughput_over_L\n";
  for (m2o_scheme scheme : schemes) {
    m2o_selection* raw = nullptr;
    Check(m2o_hfp_select(t.get(), &cfg, scheme, budget, &raw));
    SelectionPtr sel(raw);
    char* text = nullptr;
    Check(m2o_selection_serialize(sel.get(), &text));
    if (!out.empty()) sel_out.stream() << TakeString(text);
    else m2o_string_free(text);
    const double cs = m2o_selection_cs_range(sel.get());
    table << static_cast<int>(scheme) << ',' << Fmt("%.6f", cs) << ','
          << Fmt("%.6f", cs / cfg.tx_range) << ','
          << Fmt("%.6f", m2o_selection_objective(sel.get())) << ','
          << m2o_selection_link_count(sel.get()) << ','
          << m2o_selection_budget_exhausted(sel.get()) << ',';
    if (simulate) {
      m2o_topology* applied = nullptr;
      Check(m2o_selection_apply(t.get(), sel.get(), &applied));
      TopologyPtr at(applied);
      m2o_radio_config sc = cfg;
      sc.cs_range = cs;
      const Sweep s = RunSweep(at.get(), sc, sim,
                               grid.Grid(l_sim, static_cast<int>(SourceCount(at.get()))),
                               grid.refine);
      const double best = s.points[s.best].result.aggregate_throughput_bps;
      table << Fmt("%.6f", best) << ',' << Fmt("%.6f", best / l_sim) << '\n';
    } else {
      table << ",\n";
    }
  }
  Output c(csv);
  c.stream() << table.str();
}

int ExitCodeFor(m2o_status s) {
  return s == M2O_ERR_INVALID_ARGUMENT || s == M2O_ERR_DOMAIN ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"m2o: many-to-one wireless capacity toolkit"};
  app.require_subcommand(1);

  // generate
  GenerateFlags gen;
  auto* g = app.add_subcommand("generate", "build a topology file");
  g->add_option("kind", gen.kind,
                "canonical, chain, two_chain, random_disk, centric, manifold, "
                "benchmark or hfp_example")
      ->required();
  g->add_option("--out", gen.out, "output file (default stdout)");
  g->add_option("--plot", gen.plot, "write an SVG drawing of the topology");
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--chains", gen.chains, "number of chains");
  g->add_option("--hops", gen.hops, "hops per chain");
  g->add_option("--n", gen.n, "chain length in hops");
  g->add_option("--d0", gen.d0, "first ring spacing (m)");
  g->add_option("--d1", gen.d1, "second ring spacing (m)");
  g->add_option("--d", gen.d, "spacing of the remaining rings (m)");
  g->add_option("--roles", gen.roles, "chain sources: all, outermost or third");
  g->add_option("--bend", gen.bend, "two-chain angle (rad)");
  g->add_option("--radius", gen.radius, "random disk radius");
  g->add_option("--tx-range", gen.tx_range, "transmission range");
  g->add_option("--sources", gen.sources, "boundary sources of a random disk");
  g->add_option("--outer-radius", gen.outer_radius, "outer radius (m)");
  g->add_option("--inner-radius", gen.inner_radius, "inner radius (m)");
  g->add_option("--n-outer", gen.n_outer, "random outer nodes");
  g->add_option("--n-inner", gen.n_inner, "random inner nodes (benchmark)");
  g->add_option("--min-sep", gen.min_sep, "minimum outer node separation (m)");
  g->add_option("--position-error", gen.position_error,
                "manifold core jitter as a fraction of d0");

  // analyze
  std::string an_path, an_out;
  RadioFlags an_radio;
  auto* a = app.add_subcommand("analyze", "hidden-node and capacity-bound report");
  a->add_option("topology", an_path)->required();
  a->add_option("--out", an_out, "output file (default stdout)");
  an_radio.Add(a);

  // verify-schedule
  std::string vs_topo, vs_sched, vs_builtin, vs_mode = "pairwise";
  int vs_hops = 2;
  RadioFlags vs_radio;
  auto* v = app.add_subcommand("verify-schedule", "check a slot schedule");
  v->add_option("topology", vs_topo)->required();
  v->add_option("schedule", vs_sched, "schedule file");
  v->add_option("--builtin", vs_builtin, "fig9, fig12 or chain");
  v->add_option("--hops", vs_hops, "hops per chain (chain length for --builtin chain)");
  v->add_option("--mode", vs_mode, "pairwise or aggregate");
  vs_radio.Add(v);

  // simulate
  std::string sm_path, sm_out;
  double sm_load = 0.0;
  RadioFlags sm_radio;
  SimFlags sm_sim;
  auto* s = app.add_subcommand("simulate", "one simulation run");
  s->add_option("topology", sm_path)->required();
  s->add_option("--load", sm_load, "per-source offered load (bit/s)")->required();
  s->add_option("--out", sm_out, "CSV output (default stdout)");
  sm_radio.Add(s);
  sm_sim.Add(s);

  // sweep
  std::string sw_path, sw_out, sw_plot;
  RadioFlags sw_radio;
  SimFlags sw_sim;
  GridFlags sw_grid;
  auto* w = app.add_subcommand("sweep", "offered-load sweep");
  w->add_option("topology", sw_path)->required();
  w->add_option("--out", sw_out, "CSV output (default stdout)");
  w->add_option("--plot", sw_plot, "SVG of throughput vs offered load");
  sw_radio.Add(w);
  sw_sim.Add(w);
  sw_grid.Add(w);

  // csrange-sweep
  std::string cs_path, cs_out, cs_plot;
  std::vector<double> cs_list;
  double cs_min = 0.0, cs_max = 0.0, cs_step = 0.0;
  RadioFlags cs_radio;
  SimFlags cs_sim;
  GridFlags cs_grid;
  auto* c = app.add_subcommand("csrange-sweep", "offered-load sweep at several CS ranges");
  c->add_option("topology", cs_path)->required();
  c->add_option("--cs-list", cs_list, "explicit CS ranges (m)")->delimiter(',');
  c->add_option("--cs-min", cs_min, "first CS range (m)");
  c->add_option("--cs-max", cs_max, "last CS range (m)");
  c->add_option("--cs-step", cs_step, "CS range step (m)");
  c->add_option("--out", cs_out, "CSV output (default stdout)");
  c->add_option("--plot", cs_plot, "SVG of peak throughput vs CS range");
  cs_radio.Add(c);
  cs_sim.Add(c);
  cs_grid.Add(c);

  // hfp
  std::string hf_path, hf_scheme = "all", hf_out, hf_csv;
  uint64_t hf_budget = 0;
  bool hf_sim = false;
  RadioFlags hf_radio;
  SimFlags hf_simflags;
  GridFlags hf_grid;
  auto* h = app.add_subcommand("hfp", "hidden-node free path selection");
  h->add_option("topology", hf_path)->required();
  h->add_option("--scheme", hf_scheme, "1, 2, 3 or all");
  h->add_option("--budget", hf_budget, "scheme 3 search budget (0 = default)");
  h->add_flag("--simulate", hf_sim, "sweep each selection and report peak throughput");
  h->add_option("--out", hf_out, "write the path selections here");
  h->add_option("--csv", hf_csv, "comparison CSV (default stdout)");
  hf_radio.Add(h);
  hf_simflags.Add(h);
  hf_grid.Add(h);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (g->parsed()) {
      CmdGenerate(gen);
    } else if (a->parsed()) {
      CmdAnalyze(an_path, an_radio, an_out);
    } else if (v->parsed()) {
      return CmdVerify(vs_topo, vs_sched, vs_builtin, vs_hops, vs_radio, vs_mode);
    } else if (s->parsed()) {
      CmdSimulate(sm_path, sm_radio, sm_sim, sm_load, sm_out);
    } else if (w->parsed()) {
      CmdSweep(sw_path, sw_radio, sw_sim, sw_grid, sw_out, sw_plot);
    } else if (c->parsed()) {
      CmdCsRangeSweep(cs_path, cs_radio, cs_sim, cs_grid, cs_list, cs_min, cs_max, cs_step,
                      cs_out, cs_plot);
    } else if (h->parsed()) {
      CmdHfp(hf_path, hf_scheme, hf_budget, hf_sim, hf_radio, hf_simflags, hf_grid, hf_out,
             hf_csv);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ApiError& e) {
    std::cerr << "error (" << m2o_status_name(e.status) << "): " << e.what() << '\n';
    return ExitCodeFor(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
