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

#include "random_graph.hpp"

#include <cmath>

namespace repograph::testing {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

}  // namespace

std::vector<float> random_unit_vector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<float> v(static_cast<std::size_t>(dim));
  double sq = 0;
  do {
    sq = 0;
    for (auto& x : v) {
      x = static_cast<float>(normal(rng));
      sq += static_cast<double>(x) * x;
    }
  } while (sq == 0);
  return v;
}

KnowledgeGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& opt) {
  KnowledgeGraph g;
  g.meta().graph_id = "g-" + std::to_string(rng() % 100000);
  g.meta().repo_url = "file:///tmp/repo";
  g.meta().revision = "deadbeef";
  g.meta().provider_fingerprint = "stub";
  if (opt.embedding_dim > 0) g.set_embedding_dim(opt.embedding_dim);

  const auto maybe_embed = [&](Node& n) {
    if (opt.embedding_dim <= 0) return;
    if (rng() % 4 != 0) n.description_embedding = Embedding::normalized(random_unit_vector(rng, opt.embedding_dim));
    if (rng() % 3 == 0) n.code_embedding = Embedding::normalized(random_unit_vector(rng, opt.embedding_dim));
  };

  Node root;
  root.kind = NodeKind::Root;
  root.name = "repo";
  root.description = "random repository";
  const NodeId root_id = g.upsert_node(root);

  std::vector<std::pair<NodeId, std::string>> containers{{root_id, ""}};
  for (int i = 0; i < opt.folders; ++i) {
    const auto [pid, ppath] = containers[pick(rng, containers.size())];
    Node f;
    f.kind = NodeKind::Folder;
    f.name = "dir" + std::to_string(i);
    f.path = ppath.empty() ? f.name : ppath + "/" + f.name;
    f.parent = pid;
    maybe_embed(f);
    const NodeId id = g.upsert_node(f);
    g.add_edge(pid, id, EdgeKind::Contains);
    containers.emplace_back(id, f.path);
  }
  std::vector<NodeId> files;
  for (int i = 0; i < opt.files; ++i) {
    const auto [pid, ppath] = containers[pick(rng, containers.size())];
    Node f;
    f.kind = NodeKind::File;
    f.name = "file" + std::to_string(i) + ".py";
    f.path = ppath.empty() ? f.name : ppath + "/" + f.name;
    f.parent = pid;
    f.language = "Python";
    f.size_bytes = rng() % 5000;
    f.raw_content = "def f" + std::to_string(i) + "():\n    return " + std::to_string(i) + "\n";
    if (rng() % 2) f.docstring = "Module " + std::to_string(i) + ".";
    maybe_embed(f);
    const NodeId id = g.upsert_node(f);
    g.add_edge(pid, id, EdgeKind::Contains);
    files.push_back(id);
  }
  std::vector<NodeId> classes, callables;
  for (int i = 0; i < opt.entities && !files.empty(); ++i) {
    Node e;
    const int roll = static_cast<int>(rng() % 3);
    if (roll == 2 && !classes.empty()) {
      const NodeId cls = classes[pick(rng, classes.size())];
      const Node& c = g.at(cls);
      e.kind = NodeKind::MemberFunction;
      e.name = "m" + std::to_string(i);
      e.path = c.path;
      e.qualified_name = c.qualified_name + "." + e.name;
      e.parent = cls;
      e.signature = "def " + e.name + "(self)";
      e.line_span = LineSpan{2, 3};
    } else {
      const NodeId file = files[pick(rng, files.size())];
      e.kind = roll == 0 ? NodeKind::Class : NodeKind::Function;
      e.name = (roll == 0 ? "C" : "f") + std::to_string(i);
      e.path = g.at(file).path;
      e.qualified_name = e.name;
      e.parent = file;
      if (e.kind == NodeKind::Function) e.signature = "def " + e.name + "()";
      e.line_span = LineSpan{1, static_cast<int>(1 + rng() % 20)};
    }
    e.raw_content = "body of " + e.qualified_name;
    if (rng() % 2) e.docstring = "Docstring for " + e.name + ".";
    maybe_embed(e);
    const NodeId id = g.upsert_node(e);
    g.add_edge(e.parent, id, EdgeKind::Implements);
    if (e.kind == NodeKind::Class) classes.push_back(id);
    else callables.push_back(id);
  }
  for (int i = 0; i < opt.extra_edges; ++i) {
    switch (rng() % 4) {
      case 0:
        if (callables.size() >= 1)
          g.add_edge(callables[pick(rng, callables.size())], callables[pick(rng, callables.size())], EdgeKind::Calls);
        break;
      case 1:
        if (classes.size() >= 2) {
          const NodeId a = classes[pick(rng, classes.size())];
          const NodeId b = classes[pick(rng, classes.size())];
          if (a != b) g.add_edge(a, b, EdgeKind::Inherits);
        }
        break;
      case 2:
        if (files.size() >= 2) {
          const NodeId a = files[pick(rng, files.size())];
          const NodeId b = files[pick(rng, files.size())];
          if (a != b) g.add_edge(a, b, EdgeKind::Refers);
        }
        break;
      default: {
        std::vector<NodeId> pool = files;
        pool.insert(pool.end(), callables.begin(), callables.end());
        if (pool.size() >= 2) g.add_edge(pool[pick(rng, pool.size())], pool[pick(rng, pool.size())], EdgeKind::Tests);
      }
    }
  }
  return g;
}

std::set<NodeId> reference_reachable(const KnowledgeGraph& g, const std::set<NodeId>& seeds,
                                     const TraversalSpec& spec) {
  const auto edges = g.edges_sorted();
  const auto edge_ok = [&](EdgeKind k) {
    return spec.edge_kinds.empty() || spec.edge_kinds.find(k) != spec.edge_kinds.end();
  };
  const auto kind_ok = [&](NodeId id) {
    return spec.allowed_kinds.empty() || spec.allowed_kinds.find(g.at(id).kind) != spec.allowed_kinds.end();
  };
  std::set<NodeId> seen = seeds;
  std::set<NodeId> level = seeds;
  for (int d = 0; d < spec.depth; ++d) {
    std::set<NodeId> next;
    for (const Edge& e : edges) {
      if (!edge_ok(e.kind)) continue;
      if (spec.direction != Direction::Incoming && level.count(e.src) && !seen.count(e.dst) && kind_ok(e.dst))
        next.insert(e.dst);
      if (spec.direction != Direction::Outgoing && level.count(e.dst) && !seen.count(e.src) && kind_ok(e.src))
        next.insert(e.src);
    }
    seen.insert(next.begin(), next.end());
    level = std::move(next);
  }
  std::set<NodeId> out;
  for (NodeId id : seen)
    if (!seeds.count(id)) out.insert(id);
  return out;
}

double reference_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace repograph::testing
