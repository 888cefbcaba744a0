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

#include "m2o/hfp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <sstream>

#include "m2o/conflict.hpp"
#include "m2o/error.hpp"

namespace m2o {
namespace {

constexpr double kCap = 0.75;
constexpr double kEps = 1e-12;
constexpr std::size_t kMaxEnumerated = 200000;

using Path = std::vector<NodeId>;

// Heaviest clique; vertices given as adjacency masks and positive weights.
int HeaviestClique(const std::vector<std::uint64_t>& adj, const std::vector<int>& w,
                   std::uint64_t cand, int acc, int best) {
  if (cand == 0) return std::max(acc, best);
  int rest = 0;
  for (std::uint64_t c = cand; c; c &= c - 1) rest += w[static_cast<std::size_t>(std::countr_zero(c))];
  if (acc + rest <= best) return best;
  while (cand != 0) {
    int rest_now = 0;
    for (std::uint64_t c = cand; c; c &= c - 1) rest_now += w[static_cast<std::size_t>(std::countr_zero(c))];
    if (acc + rest_now <= best) break;
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    best = HeaviestClique(adj, w, cand & adj[static_cast<std::size_t>(v)],
                          acc + w[static_cast<std::size_t>(v)], best);
  }
  return best;
}

// Pairwise facts over a fixed link universe.
class LinkUniverse {
 public:
  LinkUniverse(const Topology& t, std::vector<DirectedLink> links, double delta)
      : links_(std::move(links)) {
    std::sort(links_.begin(), links_.end());
    links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
    const std::size_t n = links_.size();
    compat_.assign(n * n, 0);
    txdist_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const char c = PairwiseCompatible(links_[i], links_[j], t.positions, delta);
        const double d = Distance(t.positions[links_[i].tx], t.positions[links_[j].tx]);
        compat_[i * n + j] = compat_[j * n + i] = c;
        txdist_[i * n + j] = txdist_[j * n + i] = d;
      }
    }
  }

  std::size_t size() const { return links_.size(); }
  const DirectedLink& link(std::size_t i) const { return links_[i]; }
  int IndexOf(const DirectedLink& l) const {
    const auto it = std::lower_bound(links_.begin(), links_.end(), l);
    if (it == links_.end() || !(*it == l)) return -1;
    return static_cast<int>(it - links_.begin());
  }

  // Minimal hidden-node-free cs_range of the active set.
  double MinCs(const std::vector<int>& act) const {
    const std::size_t n = links_.size();
    double cs = 0.0;
    for (std::size_t a = 0; a < act.size(); ++a) {
      for (std::size_t b = a + 1; b < act.size(); ++b) {
        const std::size_t k = static_cast<std::size_t>(act[a]) * n + static_cast<std::size_t>(act[b]);
        if (!compat_[k]) cs = std::max(cs, txdist_[k]);
      }
    }
    return cs;
  }

  // Heaviest conflict clique of the active set at cs_range `cs`.
  int Weight(const std::vector<int>& act, const std::vector<int>& count, double cs) const {
    if (act.size() > 64) {
      Fail(ErrorCode::kInvalidArgument, "more than 64 active links in a selection");
    }
    const std::size_t n = links_.size();
    std::vector<std::uint64_t> adj(act.size(), 0);
    std::vector<int> w(act.size());
    for (std::size_t a = 0; a < act.size(); ++a) {
      w[a] = count[static_cast<std::size_t>(act[a])];
      for (std::size_t b = 0; b < act.size(); ++b) {
        if (a == b) continue;
        const std::size_t k = static_cast<std::size_t>(act[a]) * n + static_cast<std::size_t>(act[b]);
        if (!compat_[k] || txdist_[k] <= cs) adj[a] |= std::uint64_t{1} << b;
      }
    }
    const std::uint64_t all =
        act.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << act.size()) - 1;
    return HeaviestClique(adj, w, all, 0, 0);
  }

 private:
  std::vector<DirectedLink> links_;
  std::vector<char> compat_;
  std::vector<double> txdist_;
};

struct Eval {
  double objective = 0.0;
  double cs = 0.0;
};

Eval Evaluate(const LinkUniverse& u, const std::vector<int>& count, int n_sources,
              double fixed_cs = -1.0) {
  std::vector<int> act;
  for (std::size_t i = 0; i < count.size(); ++i) {
    if (count[i] > 0) act.push_back(static_cast<int>(i));
  }
  Eval e;
  e.cs = fixed_cs >= 0.0 ? fixed_cs : u.MinCs(act);
  const int w = u.Weight(act, count, e.cs);
  e.objective = w == 0 ? kCap : std::min(kCap, static_cast<double>(n_sources) / w);
  return e;
}

std::vector<DirectedLink> PathLinks(const Path& p) {
  std::vector<DirectedLink> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) out.push_back({p[i], p[i + 1]});
  return out;
}

std::map<NodeId, Path> MinHopPaths(const Topology& t) {
  std::map<NodeId, Path> out;
  for (NodeId s : t.Sources()) out[s] = t.PathOf(s);
  return out;
}

PathSelection AllLinksSelection(const Topology& t, const RadioConfig& config,
                                HfpScheme scheme, double cs) {
  PathSelection sel;
  sel.scheme = scheme;
  sel.cs_range = cs;
  sel.paths = MinHopPaths(t);
  sel.active_links = t.links;
  std::sort(sel.active_links.begin(), sel.active_links.end());
  std::vector<DirectedLink> used;
  for (const auto& [s, p] : sel.paths) {
    for (const auto& l : PathLinks(p)) used.push_back(l);
  }
  if (!used.empty()) {
    LinkUniverse u(t, used, config.delta);
    std::vector<int> count(u.size(), 0);
    for (const auto& [s, p] : sel.paths) {
      for (const auto& l : PathLinks(p)) ++count[static_cast<std::size_t>(u.IndexOf(l))];
    }
    sel.objective = Evaluate(u, count, static_cast<int>(sel.paths.size()), cs).objective;
  }
  return sel;
}

std::vector<int> HopsToSink(const Topology& t) {
  std::vector<std::vector<NodeId>> in(t.size());
  for (const auto& l : t.links) in[l.rx].push_back(l.tx);
  std::vector<int> d(t.size(), -1);
  std::deque<NodeId> q{t.sink};
  d[t.sink] = 0;
  while (!q.empty()) {
    const NodeId v = q.front();
    q.pop_front();
    for (NodeId u : in[v]) {
      if (d[u] < 0) {
        d[u] = d[v] + 1;
        q.push_back(u);
      }
    }
  }
  return d;
}

double PathLength(const Topology& t, const Path& p) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    len += Distance(t.positions[p[i]], t.positions[p[i + 1]]);
  }
  return len;
}

std::vector<Path> CandidatePaths(const Topology& t, NodeId s,
                                 const std::vector<std::vector<NodeId>>& out,
                                 const std::vector<int>& hops, const HfpOptions& opt) {
  if (hops[s] < 0) {
    Fail(ErrorCode::kUnreachable, "source " + std::to_string(s) + " cannot reach the sink");
  }
  const int limit = static_cast<int>(std::floor(opt.hop_stretch * hops[s] + 1e-9));
  std::vector<Path> found;
  Path cur{s};
  std::vector<char> on(t.size(), 0);
  on[s] = 1;
  auto dfs = [&](auto&& self, NodeId u) -> void {
    if (found.size() >= kMaxEnumerated) return;
    if (u == t.sink) {
      found.push_back(cur);
      return;
    }
    const int used = static_cast<int>(cur.size()) - 1;
    for (NodeId v : out[u]) {
      if (on[v] || hops[v] < 0 || used + 1 + hops[v] > limit) continue;
      on[v] = 1;
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
      on[v] = 0;
    }
  };
  dfs(dfs, s);
  std::sort(found.begin(), found.end(), [&](const Path& a, const Path& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    const double la = PathLength(t, a), lb = PathLength(t, b);
    if (la != lb) return la < lb;
    return a < b;
  });
  if (found.size() > static_cast<std::size_t>(opt.max_candidates)) {
    found.resize(static_cast<std::size_t>(opt.max_candidates));
  }
  return found;
}

class Search {
 public:
  Search(const Topology& t, const LinkUniverse& u, std::vector<NodeId> sources,
         std::vector<std::vector<Path>> cands, const HfpOptions& opt)
      : t_(t), u_(u), sources_(std::move(sources)), cands_(std::move(cands)), opt_(opt) {
    cand_links_.resize(cands_.size());
    for (std::size_t i = 0; i < cands_.size(); ++i) {
      for (const auto& p : cands_[i]) {
        std::vector<int> ids;
        for (const auto& l : PathLinks(p)) ids.push_back(u_.IndexOf(l));
        cand_links_[i].push_back(std::move(ids));
      }
    }
    count_.assign(u_.size(), 0);
    next_.assign(t_.size(), kNoRoute);
    refs_.assign(t_.size(), 0);
    choice_.assign(sources_.size(), 0);
  }

  void SetIncumbent(const std::vector<int>& count, const std::map<NodeId, Path>& paths) {
    const Eval e = Evaluate(u_, count, static_cast<int>(sources_.size()));
    best_ = e;
    best_paths_ = paths;
    best_links_ = ActiveLinks(count);
    have_best_ = true;
  }

  void Run() { Dfs(0); }

  bool exhausted() const { return exhausted_; }
  std::uint64_t expansions() const { return expansions_; }
  const Eval& best() const { return best_; }
  const std::map<NodeId, Path>& best_paths() const { return best_paths_; }
  const std::vector<DirectedLink>& best_links() const { return best_links_; }

 private:
  std::vector<DirectedLink> ActiveLinks(const std::vector<int>& count) const {
    std::vector<DirectedLink> out;
    for (std::size_t i = 0; i < count.size(); ++i) {
      if (count[i] > 0) out.push_back(u_.link(i));
    }
    return out;
  }

  bool Better(const Eval& e, const std::vector<DirectedLink>& links) const {
    if (!have_best_) return true;
    if (e.objective > best_.objective + kEps) return true;
    if (e.objective < best_.objective - kEps) return false;
    if (e.cs < best_.cs - 1e-9) return true;
    if (e.cs > best_.cs + 1e-9) return false;
    return links < best_links_;
  }

  bool Place(const Path& p) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (next_[p[i]] != kNoRoute && next_[p[i]] != p[i + 1]) return false;
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      next_[p[i]] = p[i + 1];
      ++refs_[p[i]];
    }
    return true;
  }

  void Unplace(const Path& p) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (--refs_[p[i]] == 0) next_[p[i]] = kNoRoute;
    }
  }

  void Dfs(std::size_t depth) {
    if (exhausted_) return;
    if (++expansions_ > opt_.budget) {
      exhausted_ = true;
      return;
    }
    if (depth == sources_.size()) {
      const Eval e = Evaluate(u_, count_, static_cast<int>(sources_.size()));
      const auto links = ActiveLinks(count_);
      if (Better(e, links)) {
        best_ = e;
        best_links_ = links;
        best_paths_.clear();
        for (std::size_t i = 0; i < sources_.size(); ++i) {
          best_paths_[sources_[i]] = cands_[i][static_cast<std::size_t>(choice_[i])];
        }
        have_best_ = true;
      }
      return;
    }
    for (std::size_t c = 0; c < cands_[depth].size(); ++c) {
      const Path& p = cands_[depth][c];
      if (!Place(p)) continue;
      for (int id : cand_links_[depth][c]) ++count_[static_cast<std::size_t>(id)];
      // Partial sets only lose capacity and gain cs_range as links are added.
      const Eval bound = Evaluate(u_, count_, static_cast<int>(sources_.size()));
      const bool prune =
          have_best_ && (bound.objective < best_.objective - kEps ||
                         (bound.objective <= best_.objective + kEps && bound.cs > best_.cs + 1e-9));
      if (!prune) {
        choice_[depth] = static_cast<int>(c);
        Dfs(depth + 1);
      }
      for (int id : cand_links_[depth][c]) --count_[static_cast<std::size_t>(id)];
      Unplace(p);
      if (exhausted_) return;
    }
  }

  const Topology& t_;
  const LinkUniverse& u_;
  std::vector<NodeId> sources_;
  std::vector<std::vector<Path>> cands_;
  std::vector<std::vector<std::vector<int>>> cand_links_;
  HfpOptions opt_;
  std::vector<int> count_;
  std::vector<NodeId> next_;
  std::vector<int> refs_;
  std::vector<int> choice_;
  bool have_best_ = false;
  Eval best_;
  std::vector<DirectedLink> best_links_;
  std::map<NodeId, Path> best_paths_;
  bool exhausted_ = false;
  std::uint64_t expansions_ = 0;
};

}  // namespace

const char* HfpSchemeName(HfpScheme scheme) {
  switch (scheme) {
    case HfpScheme::kFixed378:
      return "fixed_378";
    case HfpScheme::kMinHfdAllLinks:
      return "min_hfd_all_links";
    case HfpScheme::kHfpSubset:
      return "hfp_subset";
  }
  return "fixed_378";
}

HfpScheme ParseHfpScheme(const std::string& name) {
  if (name == "1" || name == "fixed_378") return HfpScheme::kFixed378;
  if (name == "2" || name == "min_hfd_all_links") return HfpScheme::kMinHfdAllLinks;
  if (name == "3" || name == "hfp_subset") return HfpScheme::kHfpSubset;
  Fail(ErrorCode::kInvalidArgument, "unknown scheme '" + name + "'");
}

PathSelection SelectScheme1(const Topology& t, const RadioConfig& config) {
  config.Validate();
  return AllLinksSelection(t, config, HfpScheme::kFixed378, 3.78 * config.tx_range);
}

PathSelection SelectScheme2(const Topology& t, const RadioConfig& config) {
  RadioConfig c = config;
  c.rs_mode = true;
  return AllLinksSelection(t, config, HfpScheme::kMinHfdAllLinks, MinHfdCsRange(t, c));
}

double PathSetObjective(const Topology& t, const RadioConfig& config,
                        const std::map<NodeId, std::vector<NodeId>>& paths,
                        double* cs_range) {
  std::vector<DirectedLink> used;
  for (const auto& [s, p] : paths) {
    for (const auto& l : PathLinks(p)) used.push_back(l);
  }
  LinkUniverse u(t, used, config.delta);
  std::vector<int> count(u.size(), 0);
  for (const auto& [s, p] : paths) {
    for (const auto& l : PathLinks(p)) ++count[static_cast<std::size_t>(u.IndexOf(l))];
  }
  const Eval e = Evaluate(u, count, static_cast<int>(paths.size()));
  if (cs_range) *cs_range = e.cs;
  return e.objective;
}

PathSelection SelectScheme3(const Topology& t, const RadioConfig& config,
                            const HfpOptions& options) {
  config.Validate();
  if (options.max_candidates < 1 || !(options.hop_stretch >= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "need max_candidates >= 1 and hop_stretch >= 1");
  }
  const std::vector<NodeId> sources = t.Sources();
  std::vector<std::vector<NodeId>> out(t.size());
  for (const auto& l : t.links) out[l.tx].push_back(l.rx);
  for (auto& o : out) {
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
  }
  const std::vector<int> hops = HopsToSink(t);
  std::vector<std::vector<Path>> cands;
  std::vector<DirectedLink> universe;
  const auto min_hop = MinHopPaths(t);
  for (NodeId s : sources) {
    cands.push_back(CandidatePaths(t, s, out, hops, options));
    for (const auto& p : cands.back()) {
      for (const auto& l : PathLinks(p)) universe.push_back(l);
    }
    for (const auto& l : PathLinks(min_hop.at(s))) universe.push_back(l);
  }
  PathSelection sel;
  sel.scheme = HfpScheme::kHfpSubset;
  if (sources.empty()) return sel;
  LinkUniverse u(t, universe, config.delta);
  Search search(t, u, sources, cands, options);
  // The min-hop routes seed the incumbent.
  std::vector<int> count(u.size(), 0);
  for (const auto& [s, p] : min_hop) {
    for (const auto& l : PathLinks(p)) ++count[static_cast<std::size_t>(u.IndexOf(l))];
  }
  search.SetIncumbent(count, min_hop);
  search.Run();
  sel.paths = search.best_paths();
  sel.active_links = search.best_links();
  sel.cs_range = search.best().cs;
  sel.objective = search.best().objective;
  sel.budget_exhausted = search.exhausted();
  sel.expansions = search.expansions();
  return sel;
}

Topology ApplySelection(const Topology& t, const PathSelection& sel) {
  Topology out = t;
  out.links = sel.active_links;
  out.next_hop.assign(t.size(), kNoRoute);
  for (const auto& [s, p] : sel.paths) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) out.next_hop[p[i]] = p[i + 1];
  }
  out.ring_index = ComputeRingIndex(out);
  out.Validate();
  return out;
}

std::string SerializeSelection(const PathSelection& sel) {
  std::ostringstream o;
  o.precision(6);
  o << std::fixed;
  o << "scheme " << HfpSchemeName(sel.scheme) << '\n';
  o << "csrange " << sel.cs_range << '\n';
  for (const auto& [s, p] : sel.paths) {
    o << "path " << s << ':';
    for (NodeId v : p) o << ' ' << v;
    o << '\n';
  }
  return o.str();
}

}  // namespace m2o
