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

#include <algorithm>

#include "repograph/core/error.hpp"
#include "repograph/retrieval/search.hpp"
#include "repograph/retrieval/similarity.hpp"

namespace repograph {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Semantic: return "semantic";
    case Stage::Traversal: return "traversal";
    case Stage::Discovery: return "discovery";
  }
  return "semantic";
}

namespace {

struct Candidate {
  const Node* node;
  const Embedding* embedding;
};

struct Scored {
  double score;
  const Node* node;
};

bool better(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.node->path != b.node->path) return a.node->path < b.node->path;
  return a.node->id < b.node->id;
}

}  // namespace

std::vector<RankedHit> semantic_search(const KnowledgeGraph& graph, const std::vector<Embedding>& query,
                                       const SemanticOptions& options, std::vector<std::string>* warnings) {
  if (options.limit == 0) throw ValidationError("semantic search limit must be at least 1");
  if (query.empty()) throw ValidationError("semantic search needs at least one query embedding");
  for (const auto& q : query)
    if (q.dim() != query.front().dim()) throw DimensionError("query embeddings differ in dim");

  std::vector<Candidate> candidates;
  candidates.reserve(graph.node_count());
  for (const auto& [id, n] : graph.nodes()) {
    if (n.kind == NodeKind::Root) continue;
    if (!options.node_kinds.empty() && !options.node_kinds.count(n.kind)) continue;
    const Embedding* e = n.description_embedding   ? &*n.description_embedding
                         : n.code_embedding        ? &*n.code_embedding
                                                   : nullptr;
    if (!e) continue;
    if (e->dim() != query.front().dim())
      throw DimensionError("query dim " + std::to_string(query.front().dim()) + " does not match node dim " +
                           std::to_string(e->dim()));
    candidates.push_back({&n, e});
  }
  if (candidates.empty()) {
    if (warnings) warnings->push_back("no enriched nodes of the requested kinds; semantic stage is empty");
    return {};
  }

  // scores[j][i]: query j against candidate i.
  std::vector<std::vector<double>> scores(query.size(), std::vector<double>(candidates.size()));
  for (std::size_t j = 0; j < query.size(); ++j)
    for (std::size_t i = 0; i < candidates.size(); ++i)
      scores[j][i] = cosine_similarity(query[j], *candidates[i].embedding);

  std::vector<Scored> ranked(candidates.size());
  if (options.fusion == FusionPolicy::QueryWinner && query.size() > 1) {
    std::size_t winner = 0;
    double best = -2.0;
    for (std::size_t j = 0; j < query.size(); ++j) {
      const double top = *std::max_element(scores[j].begin(), scores[j].end());
      if (top > best) {
        best = top;
        winner = j;
      }
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) ranked[i] = {scores[winner][i], candidates[i].node};
  } else {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      double s = scores[0][i];
      for (std::size_t j = 1; j < query.size(); ++j) s = std::max(s, scores[j][i]);
      ranked[i] = {s, candidates[i].node};
    }
  }

  const std::size_t n = std::min(options.limit, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<long>(n), ranked.end(), better);
  std::vector<RankedHit> hits;
  hits.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    hits.push_back({ranked[i].node->id, ranked[i].score, {Stage::Semantic}, static_cast<int>(i + 1)});
  return hits;
}

}  // namespace repograph
