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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "repograph/clustering/community.hpp"
#include "repograph/core/graph.hpp"
#include "repograph/enrich/providers.hpp"

namespace repograph {

enum class ClusterMethod { Semantic, Louvain, LabelPropagation };
std::string_view to_string(ClusterMethod m);
// Accepts "semantic", "louvain", "label-propagation" (also "lpa").
ClusterMethod parse_cluster_method(std::string_view s);

inline constexpr int kMiscCluster = 0;
inline constexpr int kUnassigned = -1;

struct ClusterAssignment {
  ClusterMethod method = ClusterMethod::Semantic;
  std::uint64_t seed = 0;
  std::map<NodeId, int> cluster_of;  // kUnassigned before misc grouping
  std::map<int, std::optional<std::string>> labels;

  std::map<int, std::vector<NodeId>> members() const;
  // Throws ValidationError when an id is below kUnassigned.
  void validate() const;
};

struct ClusteringQuality {
  std::size_t count = 0;            // clusters other than misc
  std::vector<std::size_t> sizes;   // of those clusters, descending
  std::size_t unassigned = 0;       // misc plus unassigned files
  double score = 0.0;               // silhouette (semantic) or modularity (network)

  static ClusteringQuality of(const ClusterAssignment& a, double score);
  nlohmann::json to_json() const;
};

// Files that take part in clustering, sorted by path.
struct ClusterScope {
  bool source_only = true;  // only files in the Source category
};
std::vector<NodeId> clustering_scope(const KnowledgeGraph& graph, const ClusterScope& scope = {});

// Optional co-change counts between file paths, added to edge weights.
using CoChangeCounts = std::map<std::pair<std::string, std::string>, double>;

// Undirected file graph: weight = number of Refers, Calls (between the
// files' functions) and Tests relations joining two files, plus
// co_change_weight times any co-change count. Relations within one file
// are dropped.
struct FileGraphView {
  std::vector<NodeId> files;
  WeightedGraph graph;
  std::map<NodeId, std::size_t> index;
};
FileGraphView project_file_graph(const KnowledgeGraph& graph, const std::vector<NodeId>& files,
                                 const CoChangeCounts* co_change = nullptr, double co_change_weight = 1.0);

struct FileFeatureView {
  NodeId file;
  std::size_t degree = 0;          // distinct neighbouring files
  double weighted_degree = 0.0;
  double centrality = 0.0;         // PageRank on the file graph
  Embedding semantic;
  std::optional<double> co_change;  // total co-change count, when supplied
};
std::vector<FileFeatureView> file_features(const KnowledgeGraph& graph, const FileGraphView& view,
                                           const CoChangeCounts* co_change = nullptr);

// Clusters below min_size, and unassigned files, move to misc (id 0).
// Surviving ids are unchanged.
ClusterAssignment misc_group(ClusterAssignment a, std::size_t min_size = 3);

// Misc gets "misc"; other clusters get a label from `llm` when given and it
// answers, otherwise the longest common directory of the members, else the
// most frequent token of their file names (a lone member gives its file name).
ClusterAssignment label_clusters(ClusterAssignment a, const KnowledgeGraph& graph, const LanguageModel* llm = nullptr,
                                 std::vector<std::string>* warnings = nullptr);
std::string stub_cluster_label(const std::vector<std::string>& member_paths);

struct SemanticClusterOptions {
  std::uint64_t seed = 42;
  int dims = 8;
  int n_neighbors = 15;
  double min_dist = 0.1;
  int epochs = 200;
  // Candidate rejection: more than ceil(n / max_cluster_divisor) clusters,
  // fewer than min_clusters, or more than max_unassigned_fraction in misc.
  int max_cluster_divisor = 3;
  std::size_t min_clusters = 2;
  double max_unassigned_fraction = 0.4;
  std::size_t misc_min_size = 3;
  std::size_t max_kmeans_candidates = 40;
  std::vector<int> density_min_points = {3, 5};
  std::vector<double> density_quantiles = {0.25, 0.5, 0.75, 0.9};
};

struct SemanticCandidate {
  std::string algorithm;  // "kmeans" or "density"
  std::string params;
  std::size_t clusters = 0;
  std::size_t unassigned = 0;
  double score = 0.0;
  std::optional<std::string> rejected;
};

struct ClusterResult {
  ClusterAssignment assignment;
  ClusteringQuality quality;
  std::vector<std::string> warnings;
  std::vector<SemanticCandidate> candidates;  // semantic only

  // {method, seed, clusters:[{id, label, files}], quality}
  nlohmann::json to_json(const KnowledgeGraph& graph) const;
};

// Reduction to `dims`, k-means and density clustering over a parameter
// grid, rejection, and the best silhouette in the reduced space. All
// candidates rejected gives one cluster and a warning.
ClusterResult semantic_cluster(const std::vector<NodeId>& files, const std::vector<Embedding>& embeddings,
                               const SemanticClusterOptions& options = {});

ClusterResult louvain_cluster(const FileGraphView& view, double resolution = 1.0);
ClusterResult label_propagation_cluster(const FileGraphView& view, std::uint64_t seed, int max_sweeps = 100);

struct ClusterOptions {
  ClusterMethod method = ClusterMethod::Louvain;
  std::uint64_t seed = 42;
  std::size_t misc_min_size = 3;
  double resolution = 1.0;
  ClusterScope scope;
  SemanticClusterOptions semantic;
  const CoChangeCounts* co_change = nullptr;
  const LanguageModel* labeler = nullptr;
};

// Scope, method, misc grouping and labels. Semantic clustering uses each
// file's description embedding, else its code embedding; files with
// neither are left out with a warning.
ClusterResult cluster_repository(const KnowledgeGraph& graph, const ClusterOptions& options = {});

}  // namespace repograph
