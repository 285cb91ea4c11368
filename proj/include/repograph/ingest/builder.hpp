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
#include <string>
#include <vector>

#include "json.hpp"
#include "repograph/core/graph.hpp"
#include "repograph/ingest/adapter.hpp"
#include "repograph/ingest/ignore.hpp"
#include "repograph/ingest/repo_source.hpp"

namespace repograph {

struct IngestDiagnostics {
  struct Failure {
    std::string path;
    std::string error;
  };
  std::vector<Failure> parse_failures;
  std::map<EdgeKind, std::size_t> unresolved_relations;
  std::vector<std::string> warnings;  // skipped or unreadable files

  nlohmann::json to_json() const;
};

// Test-artifact detection. A file is a test artifact when a directory
// segment is one of `test_dirs` or its basename matches a test
// prefix/suffix convention. Its target is the non-test file of the same
// language whose stem equals the stripped test stem; when several match,
// those sharing the most directory segments win.
struct TestHeuristics {
  std::vector<std::string> test_dirs = {"test", "tests", "testing", "__tests__", "spec", "specs"};
  bool link_functions = true;  // test_foo -> foo inside the target files
};

struct BuildOptions {
  IngestFilters filters;
  TestHeuristics tests;
};

// Root + one Folder per directory holding a kept file + one File per kept
// file, linked by Contains. File raw_content is the file text (binary files
// keep no content).
KnowledgeGraph build_skeleton(const RepoSource& source, const IngestFilters& filters = {},
                              IngestDiagnostics* diagnostics = nullptr);

// Parses every File's stored content with its language adapter, creates the
// entity nodes and resolves Calls/Inherits/Refers. Existing relation edges
// of those kinds are replaced.
void parse_repository(KnowledgeGraph& graph, const AdapterRegistry& adapters,
                      IngestDiagnostics* diagnostics = nullptr);

// Replaces all Tests edges according to the heuristics.
void link_tests(KnowledgeGraph& graph, const TestHeuristics& heuristics = {});

// build_skeleton + parse_repository + link_tests.
KnowledgeGraph build_graph(const RepoSource& source, const AdapterRegistry& adapters,
                           const BuildOptions& options = {}, IngestDiagnostics* diagnostics = nullptr);

bool is_test_path(const std::string& path, const TestHeuristics& heuristics = {});
// Test stem with prefixes/suffixes removed, e.g. "test_init.py" -> "init".
std::string stripped_test_stem(const std::string& path);

namespace detail {

// Shared by full and incremental builds.
NodeId ensure_folder(KnowledgeGraph& graph, const std::string& path);
// Invalidates a folder's summary after its child set changed.
void touch_folder(KnowledgeGraph& graph, NodeId folder);
void prune_empty_folders(KnowledgeGraph& graph, std::string path);
std::vector<NodeId> entity_subtree(const KnowledgeGraph& graph, NodeId file);
// Creates/updates/removes the file's entities to match `parsed`. Unchanged
// entities keep their enrichment.
void apply_entities(KnowledgeGraph& graph, NodeId file, const ParsedFile& parsed);
ParsedFile parse_file(const KnowledgeGraph& graph, NodeId file, const AdapterRegistry& adapters,
                      IngestDiagnostics* diagnostics, bool* failed);
void resolve_relations(KnowledgeGraph& graph, const AdapterRegistry& adapters,
                       const std::map<std::string, ParsedFile>& parsed, IngestDiagnostics* diagnostics);
void describe_root(KnowledgeGraph& graph);
IgnoreRules ignore_rules_for(const RepoSource& source, const std::vector<SourceFile>& listing,
                             const IngestFilters& filters);
std::vector<SourceFile> kept_files(const std::vector<SourceFile>& listing, const IgnoreRules& rules,
                                   const IngestFilters& filters, IngestDiagnostics* diagnostics);
// Builds the File node for `path`; content changes clear enrichment.
NodeId upsert_file(KnowledgeGraph& graph, const std::string& path, const std::string& content);

}  // namespace detail

}  // namespace repograph
