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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "m2o/error.hpp"
#include "m2o/topology.hpp"

namespace m2o {
namespace {

NodeId ParseId(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(tok, &used);
    if (used == tok.size() && v < kNoRoute) return static_cast<NodeId>(v);
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kParse,
       "line " + std::to_string(line) + ": bad node id '" + tok + "'");
}

double ParseCoord(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used == tok.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kParse,
       "line " + std::to_string(line) + ": bad coordinate '" + tok + "'");
}

}  // namespace

std::string SerializeTopology(const Topology& t) {
  std::string out = "topology v1\n";
  char buf[160];
  for (NodeId i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "node %u %.6f %.6f %s\n", i, t.positions[i].x,
                  t.positions[i].y, RoleName(t.roles[i]));
    out += buf;
  }
  for (const auto& l : t.links) {
    std::snprintf(buf, sizeof buf, "link %u %u\n", l.tx, l.rx);
    out += buf;
  }
  for (NodeId i = 0; i < t.next_hop.size(); ++i) {
    if (t.next_hop[i] == kNoRoute) continue;
    std::snprintf(buf, sizeof buf, "route %u %u\n", i, t.next_hop[i]);
    out += buf;
  }
  return out;
}

Topology ParseTopology(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  std::map<NodeId, std::pair<Point2D, NodeRole>> nodes;
  std::vector<DirectedLink> links;
  std::vector<std::pair<NodeId, NodeId>> routes;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "topology" || tok[1] != "v1") {
        Fail(ErrorCode::kParse, "missing 'topology v1' header");
      }
      header = true;
      continue;
    }
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (tok[0] == "node" && tok.size() == 5) {
      const NodeId id = ParseId(tok[1], lineno);
      if (!nodes.emplace(id, std::pair{Point2D{ParseCoord(tok[2], lineno),
                                               ParseCoord(tok[3], lineno)},
                                       ParseRole(tok[4])})
               .second) {
        Fail(ErrorCode::kParse, where + "duplicate node " + tok[1]);
      }
    } else if (tok[0] == "link" && tok.size() == 3) {
      links.push_back({ParseId(tok[1], lineno), ParseId(tok[2], lineno)});
    } else if (tok[0] == "route" && tok.size() == 3) {
      routes.emplace_back(ParseId(tok[1], lineno), ParseId(tok[2], lineno));
    } else {
      Fail(ErrorCode::kParse, where + "unrecognized record '" + line + "'");
    }
  }
  if (!header) Fail(ErrorCode::kParse, "empty topology text");
  Topology t;
  NodeId expect = 0;
  for (const auto& [id, value] : nodes) {
    if (id != expect++) Fail(ErrorCode::kParse, "node ids must be 0..n-1");
    t.positions.push_back(value.first);
    t.roles.push_back(value.second);
    if (value.second == NodeRole::kSink) t.sink = id;
  }
  for (const auto& l : links) {
    if (l.tx >= t.size() || l.rx >= t.size()) {
      Fail(ErrorCode::kParse, "link references unknown node");
    }
  }
  t.links = std::move(links);
  t.next_hop.assign(t.size(), kNoRoute);
  for (const auto& [id, next] : routes) {
    if (id >= t.size() || next >= t.size()) {
      Fail(ErrorCode::kParse, "route references unknown node");
    }
    t.next_hop[id] = next;
  }
  t.ring_index = ComputeRingIndex(t);
  t.Validate();
  return t;
}

void WriteTopologyFile(const Topology& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << SerializeTopology(t);
  if (!out) Fail(ErrorCode::kIo, "failed writing '" + path + "'");
}

Topology ReadTopologyFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseTopology(ss.str());
}

}  // namespace m2o
