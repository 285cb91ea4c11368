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

#include "repograph/core/graph.hpp"
#include "repograph/ingest/builder.hpp"

namespace repograph {

// File-level difference between two revisions. Renames appear as a delete
// of the old path plus an add of the new one.
struct ChangeSet {
  std::vector<std::string> added;
  std::vector<std::string> modified;
  std::vector<std::string> deleted;
  std::string old_revision;
  std::string new_revision;

  bool empty() const { return added.empty() && modified.empty() && deleted.empty(); }
  nlohmann::json to_json() const;
};

// Throws RevisionError unless `new_rev` descends from `old_rev`.
ChangeSet diff_revisions(const GitRepoSource& repo, const std::string& old_rev, const std::string& new_rev);

struct UpdateReport {
  std::vector<std::string> files_added;
  std::vector<std::string> files_changed;
  std::vector<std::string> files_removed;
  std::size_t nodes_marked_stale = 0;
};

// Applies `changes` to a graph built at changes.old_revision. `source` must
// be pinned to changes.new_revision. Changed nodes are flagged stale for
// enrichment; everything else keeps its summaries and embeddings.
// Throws RevisionError when the graph is at a different revision.
UpdateReport update_graph(KnowledgeGraph& graph, const ChangeSet& changes, const RepoSource& source,
                          const AdapterRegistry& adapters, const BuildOptions& options = {},
                          IngestDiagnostics* diagnostics = nullptr);

}  // namespace repograph
