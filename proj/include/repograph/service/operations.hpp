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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "repograph/clustering/clustering.hpp"
#include "repograph/core/graph.hpp"
#include "repograph/core/query.hpp"
#include "repograph/enrich/cache.hpp"
#include "repograph/enrich/enrich.hpp"
#include "repograph/ingest/repo_source.hpp"
#include "repograph/retrieval/search.hpp"
#include "repograph/service/config.hpp"
#include "repograph/service/provider_set.hpp"

namespace repograph {

// Label attached to every piece of model-generated text in responses.
inline constexpr const char* kLlmSuggested = "llm-suggested";

struct BuildRequest {
  RepoRef repo;
  std::optional<std::string> graph_id;  // default: derived from the repository URL
  bool enrich = true;
  bool async = true;

  // {repo, revision?, branch?, graph_id?, enrich?, async?}
  static BuildRequest from_json(const nlohmann::json& body);
};

struct UpdateRequest {
  std::string old_revision;
  std::string new_revision;
  std::string repo;  // default: the graph's repository
  bool enrich = true;
  bool async = false;

  // {old_revision, new_revision, repo?, enrich?, async?}
  static UpdateRequest from_json(const nlohmann::json& body);
};

struct SearchRequest {
  RetrievalRequest retrieval;
  bool use_llm = true;
};

// {query, mode?, k?, budget_fraction?, traversal?, enable_discovery?,
//  node_kinds?, fusion?, use_llm?}. traversal is "default", "off" or
// {edge_kinds?, node_kinds?, direction?, depth?}. Absent fields take the
// defaults. Throws ValidationError.
SearchRequest parse_search_request(const nlohmann::json& body, const SearchDefaults& defaults);
TraversalConfig parse_traversal(const nlohmann::json& j);

// Ingests (and optionally enriches) a repository. `report` receives the
// diagnostics and enrichment summary.
KnowledgeGraph build_repository(const BuildRequest& request, const ServiceConfig& config,
                                const ProviderSet& providers, EnrichCache& cache, nlohmann::json* report = nullptr);

// Checks that `graph` sits at `old_revision` (RevisionError otherwise),
// applies the diff and re-enriches stale nodes. Returns the report.
nlohmann::json update_repository(KnowledgeGraph& graph, const UpdateRequest& request, const ServiceConfig& config,
                                 const ProviderSet& providers, EnrichCache& cache);

// Local repository directory behind a graph's repo_url ("file://" prefix
// stripped).
std::string repository_location(const KnowledgeGraph& graph);

// Fills description/embeddings for the nodes in scope.
nlohmann::json enrich_repository(KnowledgeGraph& graph, const ProviderSet& providers, EnrichCache& cache,
                                 EnrichScope scope, int max_in_flight);

// SearchResponse::to_json plus graph identity, per-result snippets and
// model text labelled kLlmSuggested.
nlohmann::json search_response_json(const KnowledgeGraph& graph, const SearchResponse& response);

// Node fields, description (labelled), snippet and adjacent edges.
nlohmann::json node_detail_json(const KnowledgeGraph& graph, NodeId id);

// Files at `paths` plus everything within `depth` hops in either direction,
// and the edges among them. Throws NotFoundError for an unknown path.
ReadResult file_subgraph(const KnowledgeGraph& graph, const std::vector<std::string>& paths, int depth);

// Identity, revision, content hash and per-kind counts.
nlohmann::json stats_json(const KnowledgeGraph& graph);

// Cluster output with model labels marked kLlmSuggested.
nlohmann::json cluster_response_json(const KnowledgeGraph& graph, const ClusterResult& result, bool llm_labels);

ClusterOptions cluster_options(const ClusteringDefaults& defaults, const LanguageModel* labeler);

// First `max_lines` lines of a node's raw content, at most `max_chars`.
std::string snippet_of(const Node& node, std::size_t max_lines = 12, std::size_t max_chars = 800);

}  // namespace repograph
