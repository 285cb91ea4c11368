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

#include "repograph/core/graph.hpp"

#include <algorithm>
#include <deque>

#include "repograph/core/digest.hpp"
#include "repograph/core/error.hpp"

namespace repograph {

namespace {

const std::vector<Edge> kNoEdges;

bool is_structural(NodeKind k) {
  return k == NodeKind::Root || k == NodeKind::Folder || k == NodeKind::File;
}

std::string describe(const Node& n) {
  return std::string(to_string(n.kind)) + " '" + (n.path.empty() ? n.name : n.path) +
         (n.qualified_name.empty() ? "" : "::" + n.qualified_name) + "'";
}

void erase_edge(std::vector<Edge>& list, const Edge& e) {
  auto it = std::find(list.begin(), list.end(), e);
  if (it != list.end()) list.erase(it);
}

}  // namespace

NodeId KnowledgeGraph::identity_of(const Node& node) {
  FieldHasher h;
  h.add(static_cast<std::uint64_t>(node.kind));
  switch (node.kind) {
    case NodeKind::Root:
      h.add(node.name);
      break;
    case NodeKind::Folder:
    case NodeKind::File:
      h.add(node.path);
      break;
    default:
      h.add(node.path).add(node.qualified_name).add(node.parent.value());
      break;
  }
  const Sha256 d = h.finish();
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d[static_cast<std::size_t>(i)];
  return NodeId(v == 0 ? 1 : v);
}

void KnowledgeGraph::check_node(const Node& n) const {
  const auto fail = [&](const std::string& why) {
    throw SchemaError(describe(n) + ": " + why);
  };
  if (n.name.empty()) fail("name must not be empty");
  if ((n.kind == NodeKind::Root) != n.path.empty())
    fail("path must be empty exactly for Root");
  if (n.kind == NodeKind::File) {
    if (!n.language || !n.size_bytes) fail("File nodes require language and size_bytes");
  } else if (n.language || n.size_bytes) {
    fail("only File nodes carry language and size_bytes");
  }
  if (n.signature && !is_callable(n.kind)) fail("only functions carry a signature");
  if (n.line_span && (n.line_span->start < 1 || n.line_span->start > n.line_span->end))
    fail("line_span must satisfy 1 <= start <= end");
  if (is_entity(n.kind) && n.qualified_name.empty()) fail("entities need a qualified name");
  for (const auto* emb : {&n.description_embedding, &n.code_embedding}) {
    if (*emb && meta_.embedding_dim != 0 &&
        static_cast<int>((*emb)->dim()) != meta_.embedding_dim) {
      throw DimensionError(describe(n) + ": embedding dim " + std::to_string((*emb)->dim()) +
                           " != graph dim " + std::to_string(meta_.embedding_dim));
    }
  }
  if (n.description_embedding && n.code_embedding &&
      n.description_embedding->dim() != n.code_embedding->dim())
    throw DimensionError(describe(n) + ": mixed embedding dimensions");
  if (n.parent.valid()) {
    const Node* p = find(n.parent);
    if (!p) fail("parent " + n.parent.str() + " does not exist");
    const bool ok = is_entity(n.kind)
                        ? (p->kind == NodeKind::File || p->kind == NodeKind::Class)
                        : (p->kind == NodeKind::Root || p->kind == NodeKind::Folder);
    if (!ok || n.kind == NodeKind::Root) fail("parent kind " + std::string(to_string(p->kind)) + " not allowed");
  } else if (is_entity(n.kind)) {
    fail("entities need a parent");
  }
}

NodeId KnowledgeGraph::upsert_node(Node node, Timestamp now) {
  node.id = identity_of(node);
  check_node(node);
  if (node.kind == NodeKind::Root && root_ && *root_ != node.id)
    throw SchemaError("graph already has a Root node ('" + at(*root_).name + "')");
  if (node.kind != NodeKind::Root) {
    if (auto it = by_path_.find(node.path);
        it != by_path_.end() && it->second != node.id && is_structural(node.kind))
      throw SchemaError(describe(node) + ": path already used by another node");
  }
  auto it = nodes_.find(node.id);
  if (it != nodes_.end()) {
    const Node& old = it->second;
    if (old.kind != node.kind || old.path != node.path ||
        old.qualified_name != node.qualified_name || old.parent != node.parent ||
        (node.kind == NodeKind::Root && old.name != node.name))
      throw SchemaError("node id collision for " + describe(node));
  }
  int adopt_dim = 0;
  if (meta_.embedding_dim == 0) {
    if (node.description_embedding) adopt_dim = static_cast<int>(node.description_embedding->dim());
    else if (node.code_embedding) adopt_dim = static_cast<int>(node.code_embedding->dim());
  }
  node.last_modified = now;
  const NodeId id = node.id;
  if (adopt_dim) meta_.embedding_dim = adopt_dim;
  if (node.kind == NodeKind::Root) root_ = id;
  if (node.kind == NodeKind::Folder || node.kind == NodeKind::File) by_path_[node.path] = id;
  nodes_.insert_or_assign(id, std::move(node));
  meta_.updated_at = now;
  return id;
}

void KnowledgeGraph::modify_node(NodeId id, const std::function<void(Node&)>& fn) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw NotFoundError("unknown node " + id.str());
  Node copy = it->second;
  fn(copy);
  if (copy.id != id || copy.kind != it->second.kind || copy.path != it->second.path ||
      copy.qualified_name != it->second.qualified_name || copy.parent != it->second.parent ||
      (copy.kind == NodeKind::Root && copy.name != it->second.name))
    throw SchemaError("modify_node may not change identity fields of " + describe(it->second));
  check_node(copy);
  if (meta_.embedding_dim == 0) {
    if (copy.description_embedding) meta_.embedding_dim = static_cast<int>(copy.description_embedding->dim());
    else if (copy.code_embedding) meta_.embedding_dim = static_cast<int>(copy.code_embedding->dim());
  }
  it->second = std::move(copy);
}

std::optional<NodeId> KnowledgeGraph::structural_parent(NodeId id) const {
  for (const Edge& e : in_edges(id)) {
    if (e.kind != EdgeKind::Contains) continue;
    const NodeKind k = at(e.src).kind;
    if (k == NodeKind::Root || k == NodeKind::Folder) return e.src;
  }
  return std::nullopt;
}

bool KnowledgeGraph::add_edge(NodeId src, NodeId dst, EdgeKind kind) {
  const Node* s = find(src);
  const Node* d = find(dst);
  if (!s) throw NotFoundError("edge source " + src.str() + " does not exist");
  if (!d) throw NotFoundError("edge target " + dst.str() + " does not exist");
  if (!edge_allowed(kind, s->kind, d->kind))
    throw SchemaError(std::string(to_string(kind)) + " edge not allowed from " +
                      std::string(to_string(s->kind)) + " to " + std::string(to_string(d->kind)));
  const Edge e{src, dst, kind};
  if (edge_set_.count(e)) return false;
  if (kind == EdgeKind::Contains && is_structural(s->kind)) {
    if (auto p = structural_parent(dst); p && *p != src)
      throw SchemaError(describe(*d) + " already has a Contains parent");
    // Walking up from src must not reach dst.
    for (std::optional<NodeId> cur = src; cur; cur = structural_parent(*cur)) {
      if (*cur == dst) throw SchemaError("Contains edge would create a cycle at " + describe(*d));
    }
  }
  edge_set_.insert(e);
  out_[src].push_back(e);
  in_[dst].push_back(e);
  return true;
}

bool KnowledgeGraph::remove_edge(const Edge& e) {
  if (!edge_set_.erase(e)) return false;
  erase_edge(out_[e.src], e);
  erase_edge(in_[e.dst], e);
  return true;
}

void KnowledgeGraph::remove_node(NodeId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw NotFoundError("unknown node " + id.str());
  std::vector<Edge> incident = out_edges(id);
  const auto& in = in_edges(id);
  incident.insert(incident.end(), in.begin(), in.end());
  for (const Edge& e : incident) remove_edge(e);
  out_.erase(id);
  in_.erase(id);
  if (root_ == id) root_.reset();
  if (auto p = by_path_.find(it->second.path); p != by_path_.end() && p->second == id)
    by_path_.erase(p);
  nodes_.erase(it);
}

const Node* KnowledgeGraph::find(NodeId id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const Node& KnowledgeGraph::at(NodeId id) const {
  const Node* n = find(id);
  if (!n) throw NotFoundError("unknown node " + id.str());
  return *n;
}

std::optional<NodeId> KnowledgeGraph::find_by_path(const std::string& path) const {
  auto it = by_path_.find(path);
  if (it == by_path_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Edge>& KnowledgeGraph::out_edges(NodeId id) const {
  auto it = out_.find(id);
  return it == out_.end() ? kNoEdges : it->second;
}

const std::vector<Edge>& KnowledgeGraph::in_edges(NodeId id) const {
  auto it = in_.find(id);
  return it == in_.end() ? kNoEdges : it->second;
}

std::vector<NodeId> KnowledgeGraph::node_ids_sorted() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, _] : nodes_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<Edge> KnowledgeGraph::edges_sorted() const {
  std::vector<Edge> out(edge_set_.begin(), edge_set_.end());
  std::sort(out.begin(), out.end());
  return out;
}

void KnowledgeGraph::set_embedding_dim(int dim) {
  if (dim <= 0) throw ValidationError("embedding_dim must be positive");
  for (const auto& [id, n] : nodes_) {
    for (const auto* emb : {&n.description_embedding, &n.code_embedding}) {
      if (*emb && static_cast<int>((*emb)->dim()) != dim)
        throw DimensionError("node " + id.str() + " has embeddings of dim " +
                             std::to_string((*emb)->dim()));
    }
  }
  meta_.embedding_dim = dim;
}

std::vector<std::string> KnowledgeGraph::validate() const {
  std::vector<std::string> problems;
  std::size_t roots = 0;
  for (const auto& [id, n] : nodes_) roots += n.kind == NodeKind::Root;
  if (roots != 1) problems.push_back("expected exactly one Root, found " + std::to_string(roots));

  for (const Edge& e : edge_set_) {
    if (!contains(e.src) || !contains(e.dst)) problems.push_back("dangling edge " + e.src.str() + "->" + e.dst.str());
  }

  std::unordered_set<NodeId> reached;
  if (root_) {
    std::deque<NodeId> queue{*root_};
    reached.insert(*root_);
    while (!queue.empty()) {
      const NodeId cur = queue.front();
      queue.pop_front();
      for (const Edge& e : out_edges(cur)) {
        if (e.kind != EdgeKind::Contains || !is_structural(at(e.dst).kind)) continue;
        if (reached.insert(e.dst).second) queue.push_back(e.dst);
      }
    }
  }
  for (const auto& [id, n] : nodes_) {
    if ((n.kind == NodeKind::Folder || n.kind == NodeKind::File) && !reached.count(id))
      problems.push_back(describe(n) + " is not reachable from Root via Contains");
    if (is_entity(n.kind)) {
      bool owned = false;
      for (const Edge& e : in_edges(id)) {
        if (e.src == n.parent && (e.kind == EdgeKind::Implements || e.kind == EdgeKind::Contains)) owned = true;
      }
      if (!owned) problems.push_back(describe(n) + " has no Implements/Contains edge from its parent");
    }
  }
  return problems;
}

bool graphs_equal(const KnowledgeGraph& a, const KnowledgeGraph& b, bool ignore_timestamps) {
  GraphMetadata ma = a.meta();
  GraphMetadata mb = b.meta();
  if (ignore_timestamps) {
    ma.created_at = mb.created_at = {};
    ma.updated_at = mb.updated_at = {};
  }
  if (!(ma == mb)) return false;
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  for (const auto& [id, n] : a.nodes()) {
    const Node* m = b.find(id);
    if (!m) return false;
    if (ignore_timestamps ? !equal_ignoring_timestamps(n, *m) : !(n == *m)) return false;
  }
  return a.edges_sorted() == b.edges_sorted();
}

}  // namespace repograph
