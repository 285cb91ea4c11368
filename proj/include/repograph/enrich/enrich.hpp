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

#include <string>
#include <vector>

#include "json.hpp"
#include "repograph/core/graph.hpp"
#include "repograph/enrich/cache.hpp"
#include "repograph/enrich/providers.hpp"

namespace repograph {

enum class EnrichScope { All, StaleOnly };
EnrichScope parse_enrich_scope(std::string_view name);

struct EnrichOptions {
  EnrichScope scope = EnrichScope::StaleOnly;
  int max_in_flight = 4;                  // concurrent provider calls
  std::size_t max_content_chars = 16000;  // code sent to providers is cut here
};

struct EnrichReport {
  struct Failure {
    NodeId node;
    std::string path;
    std::string error;
  };
  std::size_t nodes_in_scope = 0;
  std::size_t nodes_enriched = 0;
  std::size_t summarize_calls = 0;
  std::size_t embed_calls = 0;
  std::size_t texts_embedded = 0;
  std::size_t cache_hits = 0;
  std::vector<Failure> failures;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

// Kinds that receive a description and a description embedding.
bool is_enrichable(NodeKind kind);
// Kinds that additionally receive a code embedding.
bool has_code_embedding(NodeKind kind);

// Summarizer input for one node. Folders are described by their name, path
// and sorted child names; other nodes by their (truncated) raw content.
SummaryRequest summary_request(const KnowledgeGraph& graph, NodeId id, std::size_t max_content_chars = 16000);

// Fills description, description_embedding and (where applicable)
// code_embedding for every enrichable node in scope. StaleOnly covers nodes
// that are stale, failed last time or lack a description/embedding.
//
// A node whose provider call fails is flagged enrichment_failed and left
// stale; the run continues. A provider whose dim disagrees with the graph's
// embedding_dim raises DimensionError before any call, and a vector of the
// wrong dim aborts the run with DimensionError; in both cases the graph is
// unchanged.
EnrichReport enrich_graph(KnowledgeGraph& graph, const Summarizer& summarizer, const Embedder& embedder,
                          EnrichCache& cache, const EnrichOptions& options = {});

std::string provider_fingerprint(const Summarizer& summarizer, const Embedder& embedder);

}  // namespace repograph
