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

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "repograph/core/graph.hpp"
#include "repograph/core/query.hpp"
#include "repograph/retrieval/preprocess.hpp"

namespace repograph {

enum class Stage { Semantic, Traversal, Discovery };
std::string_view to_string(Stage s);

struct RankedHit {
  NodeId node;
  double score = 0.0;
  std::set<Stage> provenance;
  int rank = 0;  // 1-based
};

// How several query embeddings are combined. PerNodeMax scores each node
// by its best match; QueryWinner keeps only the embedding with the higher
// top-1 similarity.
enum class FusionPolicy { PerNodeMax, QueryWinner };

struct SemanticOptions {
  std::set<NodeKind> node_kinds;  // empty = every enrichable kind
  std::size_t limit = 50;
  FusionPolicy fusion = FusionPolicy::PerNodeMax;
};

// Full scan. Each node is scored against its description embedding, or its
// code embedding when it has no description embedding. Ordering is (score
// desc, path asc, id asc). Nodes without embeddings are skipped; when none
// is eligible the result is empty and a warning is appended.
std::vector<RankedHit> semantic_search(const KnowledgeGraph& graph, const std::vector<Embedding>& query,
                                       const SemanticOptions& options, std::vector<std::string>* warnings = nullptr);

// Expansion policy. Default: direct callers (incoming Calls) of every
// function hit, then the defining File of every function among hits and
// callers. Custom: neighbors() under `spec`. Off: nothing.
struct TraversalConfig {
  enum class Mode { Default, Custom, Off };
  Mode mode = Mode::Default;
  TraversalSpec spec;

  static TraversalConfig custom(TraversalSpec s) { return {Mode::Custom, std::move(s)}; }
  static TraversalConfig off() { return {Mode::Off, {}}; }
};

// Added nodes (never a seed), each attributed to the best-ranked hit that
// reaches it. `hits` must be ordered best first.
std::map<NodeId, NodeId> traverse_expand_attributed(const KnowledgeGraph& graph, const std::vector<RankedHit>& hits,
                                                    const TraversalConfig& config);
std::set<NodeId> traverse_expand(const KnowledgeGraph& graph, const std::vector<RankedHit>& hits,
                                 const TraversalConfig& config);

// File that defines `node`: itself for a File, else the nearest File up the
// incoming Implements chain, falling back to incoming Contains.
std::optional<NodeId> defining_file(const KnowledgeGraph& graph, NodeId node);

// Path-like tokens in free text: anything containing '/', '\' or '.' after
// trimming quotes, brackets, trailing punctuation and ":line[:col]"
// suffixes; backslashes become '/'.
std::vector<std::string> path_tokens(const std::string& text);

// File nodes mentioned in the query. A token matches the Files sharing its
// longest common trailing run of path segments, provided one of the two
// paths is wholly a suffix of the other. With a model, its suggestions are
// matched the same way; model errors only add a warning.
std::set<NodeId> discover_mentioned_files(const std::string& query, const KnowledgeGraph& graph,
                                          const LanguageModel* llm, std::vector<std::string>* warnings = nullptr);

struct RetrievalRequest {
  std::string query_text;
  PreprocessMode mode = PreprocessMode::None;
  std::size_t k = 20;
  std::optional<double> budget_fraction;  // share of repository files, (0, 1]
  TraversalConfig traversal;
  bool enable_discovery = true;
  SemanticOptions semantic;  // limit is derived from k / budget_fraction

  void validate() const;
};

struct FileResult {
  NodeId file;
  std::string path;
  std::optional<double> score;  // best contributing semantic score
  int rank = 0;
  std::set<Stage> provenance;
  std::vector<NodeId> evidence;  // contributing nodes, sorted
};

struct SearchResponse {
  std::vector<FileResult> results;
  QueryBundle bundle;
  std::vector<std::string> stage_warnings;
  std::map<std::string, double> timings_ms;  // preprocess, semantic, traversal, discovery

  nlohmann::json to_json(const KnowledgeGraph& graph) const;
};

struct SearchProviders {
  const Embedder* embedder = nullptr;
  const LanguageModel* llm = nullptr;  // optional
};

// Candidate count for the semantic stage: ceil(budget_fraction * files)
// when a budget is set, else 4k.
std::size_t semantic_limit(const KnowledgeGraph& graph, const RetrievalRequest& request);

// Preprocess -> semantic search -> traversal -> discovery, fused into at
// most k files. Discovered files come first (by path), then the rest by
// (score desc, semantic before traversal-only, path asc). Throws
// ValidationError for a bad request or a graph without embeddings;
// other stage failures become warnings.
SearchResponse search_relevant(const KnowledgeGraph& graph, const RetrievalRequest& request,
                               const SearchProviders& providers);

}  // namespace repograph
