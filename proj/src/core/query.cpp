// Copyright 2026 The Repograph Authors
//
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

#include "repograph/core/query.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "repograph/core/error.hpp"

namespace repograph {

std::set<NodeId> neighbors(const KnowledgeGraph& graph, const std::set<NodeId>& seeds,
                           const TraversalSpec& spec) {
  if (spec.depth < 1) throw ValidationError("depth must be >= 1");
  for (NodeId s : seeds)
    if (!graph.contains(s)) throw NotFoundError("unknown seed node " + s.str());

  const auto edge_ok = [&](EdgeKind k) { return spec.edge_kinds.empty() || spec.edge_kinds.count(k); };
  const auto node_ok = [&](NodeId id) {
    return spec.allowed_kinds.empty() || spec.allowed_kinds.count(graph.at(id).kind);
  };

  std::unordered_map<NodeId, int> dist;
  std::deque<NodeId> frontier;
  for (NodeId s : seeds) {
    dist.emplace(s, 0);
    frontier.push_back(s);
  }
  std::set<NodeId> result;
  const auto visit = [&](NodeId next, int d) {
    if (dist.count(next) || !node_ok(next)) return;
    dist.emplace(next, d);
    result.insert(next);
    if (d < spec.depth) frontier.push_back(next);
  };
  while (!frontier.empty()) {
    const NodeId cur = frontier.front();
    frontier.pop_front();
    const int d = dist[cur] + 1;
    if (spec.direction != Direction::Incoming)
      for (const Edge& e : graph.out_edges(cur))
        if (edge_ok(e.kind)) visit(e.dst, d);
    if (spec.direction != Direction::Outgoing)
      for (const Edge& e : graph.in_edges(cur))
        if (edge_ok(e.kind)) visit(e.src, d);
  }
  return result;
}

GraphStats stats(const KnowledgeGraph& graph) {
  GraphStats s;
  for (auto k : kAllNodeKinds) s.nodes[k] = 0;
  for (auto k : kAllEdgeKinds) s.edges[k] = 0;
  for (auto c : {FileCategory::Source, FileCategory::Documentation, FileCategory::Other}) s.files[c] = 0;
  for (const auto& [id, n] : graph.nodes()) {
    ++s.nodes[n.kind];
    if (n.kind == NodeKind::File) ++s.files[category_for_path(n.path)];
    for (const Edge& e : graph.out_edges(id)) ++s.edges[e.kind];
  }
  s.total_nodes = graph.node_count();
  s.total_edges = graph.edge_count();
  return s;
}

nlohmann::json to_json(const GraphStats& s) {
  nlohmann::json nodes = nlohmann::json::object();
  nlohmann::json edges = nlohmann::json::object();
  nlohmann::json files = nlohmann::json::object();
  for (const auto& [k, v] : s.nodes) nodes[std::string(to_string(k))] = v;
  for (const auto& [k, v] : s.edges) edges[std::string(to_string(k))] = v;
  for (const auto& [k, v] : s.files) files[std::string(to_string(k))] = v;
  return {{"nodes", nodes},
          {"edges", edges},
          {"file_types", files},
          {"total_nodes", s.total_nodes},
          {"total_edges", s.total_edges}};
}

std::vector<Edge> induced_edges(const KnowledgeGraph& graph, const std::set<NodeId>& nodes) {
  std::vector<Edge> out;
  for (NodeId id : nodes) {
    for (const Edge& e : graph.out_edges(id))
      if (nodes.count(e.dst)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr const char* kAllowedForms =
    "allowed request forms: "
    "{\"type\":\"node_by_path\",\"path\":str} | "
    "{\"type\":\"nodes_by_kind\",\"kind\":NodeKind} | "
    "{\"type\":\"neighbors\",\"seeds\":[id],\"edge_kinds\":[EdgeKind],\"node_kinds\":[NodeKind],"
    "\"direction\":\"outgoing|incoming|both\",\"depth\":int} | "
    "{\"type\":\"subgraph\",\"nodes\":[id]} | "
    "{\"type\":\"stats\"}";

[[noreturn]] void invalid(const std::string& why) {
  throw ValidationError("malformed read request: " + why + "; " + kAllowedForms);
}

std::set<NodeId> parse_ids(const nlohmann::json& arr, const char* field) {
  if (!arr.is_array()) invalid(std::string("'") + field + "' must be an array of node ids");
  std::set<NodeId> ids;
  for (const auto& v : arr) {
    if (!v.is_string()) invalid(std::string("'") + field + "' entries must be strings");
    auto id = NodeId::parse(v.get<std::string>());
    if (!id) invalid("bad node id '" + v.get<std::string>() + "'");
    ids.insert(*id);
  }
  return ids;
}

void sort_by_path(const KnowledgeGraph& g, std::vector<NodeId>& ids) {
  std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
    const Node& x = g.at(a);
    const Node& y = g.at(b);
    if (x.path != y.path) return x.path < y.path;
    return a < b;
  });
}

}  // namespace

ReadRequest parse_read_request(const nlohmann::json& body) {
  if (!body.is_object() || !body.contains("type") || !body["type"].is_string())
    invalid("missing string field 'type'");
  const std::string type = body["type"].get<std::string>();
  try {
    if (type == "node_by_path") {
      if (!body.contains("path") || !body["path"].is_string()) invalid("'path' must be a string");
      return query::NodeByPath{body["path"].get<std::string>()};
    }
    if (type == "nodes_by_kind") {
      if (!body.contains("kind") || !body["kind"].is_string()) invalid("'kind' must be a string");
      return query::NodesByKind{parse_node_kind(body["kind"].get<std::string>())};
    }
    if (type == "neighbors") {
      query::Neighbors q;
      q.seeds = parse_ids(body.value("seeds", nlohmann::json()), "seeds");
      for (const auto& k : body.value("edge_kinds", nlohmann::json::array()))
        q.spec.edge_kinds.insert(parse_edge_kind(k.get<std::string>()));
      for (const auto& k : body.value("node_kinds", nlohmann::json::array()))
        q.spec.allowed_kinds.insert(parse_node_kind(k.get<std::string>()));
      q.spec.direction = parse_direction(body.value("direction", std::string("both")));
      q.spec.depth = body.value("depth", 1);
      if (q.spec.depth < 1) invalid("'depth' must be >= 1");
      return q;
    }
    if (type == "subgraph") return query::SubgraphExtract{parse_ids(body.value("nodes", nlohmann::json()), "nodes")};
    if (type == "stats") return query::Stats{};
  } catch (const ParseError& e) {
    invalid(e.what());
  } catch (const nlohmann::json::exception& e) {
    invalid(e.what());
  }
  invalid("unknown type '" + type + "'");
}

ReadResult read_query(const KnowledgeGraph& graph, const ReadRequest& request) {
  ReadResult r;
  std::visit(
      [&](const auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, query::NodeByPath>) {
          auto id = graph.find_by_path(q.path);
          if (!id) throw NotFoundError("no Folder/File at path '" + q.path + "'");
          r.nodes.push_back(*id);
        } else if constexpr (std::is_same_v<T, query::NodesByKind>) {
          for (const auto& [id, n] : graph.nodes())
            if (n.kind == q.kind) r.nodes.push_back(id);
          sort_by_path(graph, r.nodes);
        } else if constexpr (std::is_same_v<T, query::Neighbors>) {
          auto found = neighbors(graph, q.seeds, q.spec);
          r.nodes.assign(found.begin(), found.end());
          sort_by_path(graph, r.nodes);
        } else if constexpr (std::is_same_v<T, query::SubgraphExtract>) {
          for (NodeId id : q.nodes)
            if (!graph.contains(id)) throw NotFoundError("unknown node " + id.str());
          r.nodes.assign(q.nodes.begin(), q.nodes.end());
          sort_by_path(graph, r.nodes);
          r.edges = induced_edges(graph, q.nodes);
        } else {
          r.stats = stats(graph);
        }
      },
      request);
  return r;
}

nlohmann::json node_summary_json(const Node& n) {
  nlohmann::json j = {{"id", n.id.str()}, {"kind", to_string(n.kind)}, {"name", n.name}, {"path", n.path}};
  if (!n.qualified_name.empty()) j["qualified_name"] = n.qualified_name;
  if (n.line_span) j["line_span"] = {n.line_span->start, n.line_span->end};
  return j;
}

nlohmann::json to_json(const Edge& e) {
  return {{"src", e.src.str()}, {"dst", e.dst.str()}, {"kind", to_string(e.kind)}};
}

nlohmann::json to_json(const KnowledgeGraph& graph, const ReadResult& result) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (NodeId id : result.nodes) j["nodes"].push_back(node_summary_json(graph.at(id)));
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : result.edges) j["edges"].push_back(to_json(e));
  if (result.stats) j["stats"] = to_json(*result.stats);
  return j;
}

}  // namespace repograph
