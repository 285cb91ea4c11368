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

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "repograph/core/types.hpp"

namespace repograph {

struct GraphMetadata {
  std::string graph_id;
  std::string repo_url;
  std::string revision;
  int embedding_dim = 0;  // 0 until the first embedding is stored
  Timestamp created_at;
  Timestamp updated_at;
  std::string provider_fingerprint;

  friend bool operator==(const GraphMetadata&, const GraphMetadata&) = default;
};

// Typed property graph of one repository revision.
//
// Node ids are derived from an identity key:
//   Root             -> (kind, name)
//   Folder, File     -> (kind, path)
//   Class, Function,
//   MemberFunction   -> (kind, path, qualified name, parent id)
// so re-ingesting an unchanged entity yields the same id. Every mutating call
// either succeeds completely or throws SchemaError/NotFoundError and leaves
// the graph untouched.
//
// Not internally synchronized; see SharedGraph for the reader/writer wrapper.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  GraphMetadata& meta() { return meta_; }
  const GraphMetadata& meta() const { return meta_; }

  static NodeId identity_of(const Node& node);

  // Inserts or replaces by identity key. Returns the (stable) id. The
  // node's id field is ignored on input.
  NodeId upsert_node(Node node, Timestamp now = Timestamp::now());

  // Applies `fn` to a copy of the node and commits it if the result still
  // satisfies the node rules and keeps its identity fields.
  void modify_node(NodeId id, const std::function<void(Node&)>& fn);

  // Returns false when the edge already existed (duplicates collapse).
  bool add_edge(NodeId src, NodeId dst, EdgeKind kind);
  bool remove_edge(const Edge& edge);
  // Removes the node and every incident edge. Children are not touched.
  void remove_node(NodeId id);

  const Node* find(NodeId id) const;
  const Node& at(NodeId id) const;
  bool contains(NodeId id) const { return nodes_.count(id) != 0; }
  bool has_edge(const Edge& e) const { return edge_set_.count(e) != 0; }

  std::optional<NodeId> root() const { return root_; }
  // Folder or File by repository-relative path.
  std::optional<NodeId> find_by_path(const std::string& path) const;

  const std::vector<Edge>& out_edges(NodeId id) const;
  const std::vector<Edge>& in_edges(NodeId id) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_set_.size(); }

  const std::unordered_map<NodeId, Node>& nodes() const { return nodes_; }
  std::vector<NodeId> node_ids_sorted() const;
  std::vector<Edge> edges_sorted() const;

  // Sets the embedding dimension. Fails if stored embeddings disagree.
  void set_embedding_dim(int dim);

  // Whole-graph invariants that cannot be enforced per operation (Root
  // uniqueness, Contains reachability, entity ownership, no dangling edges).
  // Empty result means valid.
  std::vector<std::string> validate() const;

 private:
  void check_node(const Node& node) const;
  std::optional<NodeId> structural_parent(NodeId id) const;

  GraphMetadata meta_;
  std::unordered_map<NodeId, Node> nodes_;
  std::unordered_map<NodeId, std::vector<Edge>> out_;
  std::unordered_map<NodeId, std::vector<Edge>> in_;
  std::unordered_set<Edge> edge_set_;
  std::unordered_map<std::string, NodeId> by_path_;
  std::optional<NodeId> root_;
};

// Value comparison of two graphs. With `ignore_timestamps`, node
// last_modified and graph created_at/updated_at are excluded.
bool graphs_equal(const KnowledgeGraph& a, const KnowledgeGraph& b, bool ignore_timestamps);

}  // namespace repograph
