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

#include <unordered_map>
#include <unordered_set>

#include "repograph/retrieval/search.hpp"

namespace repograph {

namespace {

bool is_function(NodeKind k) { return k == NodeKind::Function || k == NodeKind::MemberFunction; }

std::optional<NodeId> parent_via(const KnowledgeGraph& g, NodeId id, EdgeKind kind) {
  for (const Edge& e : g.in_edges(id))
    if (e.kind == kind) return e.src;
  return std::nullopt;
}

}  // namespace

std::optional<NodeId> defining_file(const KnowledgeGraph& graph, NodeId node) {
  NodeId cur = node;
  for (int guard = 0; guard < 256; ++guard) {
    const Node& n = graph.at(cur);
    if (n.kind == NodeKind::File) return cur;
    if (n.kind == NodeKind::Root || n.kind == NodeKind::Folder) return std::nullopt;
    auto up = parent_via(graph, cur, EdgeKind::Implements);
    if (!up) up = parent_via(graph, cur, EdgeKind::Contains);
    if (!up) return std::nullopt;
    cur = *up;
  }
  return std::nullopt;
}

std::map<NodeId, NodeId> traverse_expand_attributed(const KnowledgeGraph& graph, const std::vector<RankedHit>& hits,
                                                    const TraversalConfig& config) {
  std::map<NodeId, NodeId> added;
  if (config.mode == TraversalConfig::Mode::Off || hits.empty()) return added;
  std::unordered_set<NodeId> seeds;
  for (const auto& h : hits) seeds.insert(h.node);
  // Hits are best first, so the first attribution is the best one.
  auto add = [&](NodeId node, NodeId seed) {
    if (!seeds.count(node)) added.emplace(node, seed);
  };

  if (config.mode == TraversalConfig::Mode::Custom) {
    for (const auto& h : hits)
      for (NodeId r : neighbors(graph, {h.node}, config.spec)) add(r, h.node);
    return added;
  }

  std::vector<std::pair<NodeId, NodeId>> functions;  // (function, seed)
  for (const auto& h : hits)
    if (is_function(graph.at(h.node).kind)) functions.emplace_back(h.node, h.node);
  const std::size_t direct = functions.size();
  for (std::size_t i = 0; i < direct; ++i)
    for (const Edge& e : graph.in_edges(functions[i].first))
      if (e.kind == EdgeKind::Calls && is_function(graph.at(e.src).kind)) {
        const bool fresh = !seeds.count(e.src) && !added.count(e.src);
        add(e.src, functions[i].second);
        if (fresh) functions.emplace_back(e.src, functions[i].second);
      }
  // Files of hit functions take their own attribution; caller files follow.
  std::unordered_map<NodeId, std::size_t> rank;
  for (std::size_t i = 0; i < hits.size(); ++i) rank.emplace(hits[i].node, i);
  for (const auto& [fn, seed] : functions) {
    const auto file = defining_file(graph, fn);
    if (!file || seeds.count(*file)) continue;
    const auto it = added.find(*file);
    if (it == added.end()) added.emplace(*file, seed);
    else if (rank.at(seed) < rank.at(it->second)) it->second = seed;
  }
  return added;
}

std::set<NodeId> traverse_expand(const KnowledgeGraph& graph, const std::vector<RankedHit>& hits,
                                 const TraversalConfig& config) {
  std::set<NodeId> out;
  for (const auto& [node, seed] : traverse_expand_attributed(graph, hits, config)) out.insert(node);
  return out;
}

}  // namespace repograph
