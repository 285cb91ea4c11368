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

#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "repograph/core/file_types.hpp"
#include "repograph/core/graph.hpp"

namespace repograph {

struct TraversalSpec {
  std::set<EdgeKind> edge_kinds;   // empty = every kind
  std::set<NodeKind> allowed_kinds;  // empty = every kind
  Direction direction = Direction::Both;
  int depth = 1;
};

// Nodes reachable from any seed within `depth` hops along edges of the given
// kinds and direction. Only nodes of an allowed kind are entered (and hence
// traversed through). Seeds never appear in the result.
// Throws NotFoundError naming the first unknown seed.
std::set<NodeId> neighbors(const KnowledgeGraph& graph, const std::set<NodeId>& seeds,
                           const TraversalSpec& spec);

struct GraphStats {
  std::map<NodeKind, std::size_t> nodes;
  std::map<EdgeKind, std::size_t> edges;
  std::map<FileCategory, std::size_t> files;
  std::size_t total_nodes = 0;
  std::size_t total_edges = 0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

GraphStats stats(const KnowledgeGraph& graph);
nlohmann::json to_json(const GraphStats& s);

// Node set plus every edge whose endpoints are both in the set.
std::vector<Edge> induced_edges(const KnowledgeGraph& graph, const std::set<NodeId>& nodes);

namespace query {

struct NodeByPath {
  std::string path;
};
struct NodesByKind {
  NodeKind kind;
};
struct Neighbors {
  std::set<NodeId> seeds;
  TraversalSpec spec;
};
struct SubgraphExtract {
  std::set<NodeId> nodes;
};
struct Stats {};

}  // namespace query

using ReadRequest =
    std::variant<query::NodeByPath, query::NodesByKind, query::Neighbors, query::SubgraphExtract, query::Stats>;

struct ReadResult {
  std::vector<NodeId> nodes;  // sorted by (path, id)
  std::vector<Edge> edges;
  std::optional<GraphStats> stats;
};

// Parses {"type": "...", ...}. Throws ValidationError listing the allowed
// request forms on malformed input.
ReadRequest parse_read_request(const nlohmann::json& body);

// The graph is taken by const reference; no request form can mutate it.
ReadResult read_query(const KnowledgeGraph& graph, const ReadRequest& request);

// Result with provenance: every node carries id, kind, name and path.
nlohmann::json to_json(const KnowledgeGraph& graph, const ReadResult& result);
nlohmann::json node_summary_json(const Node& node);
nlohmann::json to_json(const Edge& e);

}  // namespace repograph
