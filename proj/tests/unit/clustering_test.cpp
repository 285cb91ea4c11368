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
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "random_graph.hpp"
#include "repograph/clustering/clustering.hpp"
#include "repograph/clustering/reduce.hpp"
#include "repograph/core/error.hpp"

using namespace repograph;
using namespace repograph::testing;

namespace {

WeightedGraph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  WeightedGraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v, 1.0);
  return g;
}

WeightedGraph two_cliques_with_bridge() {
  WeightedGraph g(10);
  for (std::size_t base : {0u, 5u})
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) g.add_edge(base + i, base + j, 1.0);
  g.add_edge(4, 5, 1.0);
  return g;
}

// Dense-matrix evaluation of (1/2m) sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j].
double reference_modularity(const WeightedGraph& g, const std::vector<int>& c) {
  const std::size_t n = g.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    a[u][u] = 2.0 * g.self_loop(u);
    for (const auto& [v, w] : g.neighbors(u)) a[u][v] = w;
  }
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += a[i][j];
      two_m += a[i][j];
    }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c[i] == c[j]) q += a[i][j] - k[i] * k[j] / two_m;
  return q / two_m;
}

// Calls f on every set partition of 0..n-1 (restricted growth strings).
void for_each_partition(std::size_t n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> c(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int max_used) {
    if (i == n) {
      f(c);
      return;
    }
    for (int l = 0; l <= max_used + 1; ++l) {
      c[i] = l;
      rec(i + 1, std::max(max_used, l));
    }
  };
  if (n == 0) f(c);
  else rec(0, -1);
}

double exhaustive_max_modularity(const WeightedGraph& g) {
  double best = -1.0;
  for_each_partition(g.size(), [&](const std::vector<int>& c) { best = std::max(best, modularity(g, c)); });
  return best;
}

WeightedGraph random_weighted(std::mt19937_64& rng, std::size_t n, double p, bool weighted) {
  WeightedGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (static_cast<double>(rng() % 1000) / 1000.0 < p)
        g.add_edge(i, j, weighted ? 1.0 + static_cast<double>(rng() % 4) : 1.0);
  return g;
}

std::set<std::set<std::size_t>> groups(const std::vector<int>& labels) {
  std::map<int, std::set<std::size_t>> by;
  for (std::size_t i = 0; i < labels.size(); ++i) by[labels[i]].insert(i);
  std::set<std::set<std::size_t>> out;
  for (auto& [l, s] : by) out.insert(s);
  return out;
}

const std::set<std::set<std::size_t>> kTwoCliques = {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};

struct MiniRepo {
  KnowledgeGraph g;
  NodeId root;

  MiniRepo() {
    Node r;
    r.kind = NodeKind::Root;
    r.name = "mini";
    root = g.upsert_node(r);
  }

  NodeId file(const std::string& path) {
    Node n;
    n.kind = NodeKind::File;
    n.path = path;
    n.name = path.substr(path.rfind('/') + 1);
    n.parent = root;
    n.language = "Python";
    n.size_bytes = 0;
    const NodeId id = g.upsert_node(n);
    g.add_edge(root, id, EdgeKind::Contains);
    return id;
  }

  NodeId function(NodeId owner, const std::string& name) {
    Node n;
    n.kind = NodeKind::Function;
    n.name = name;
    n.qualified_name = name;
    n.path = g.at(owner).path;
    n.parent = owner;
    const NodeId id = g.upsert_node(n);
    g.add_edge(owner, id, EdgeKind::Implements);
    return id;
  }
};

Embedding noisy(std::mt19937_64& rng, const std::vector<double>& center, double noise) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<float> v(center.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<float>(center[i] + noise * nd(rng));
  return Embedding::normalized(std::move(v));
}

double cos_sim(const Embedding& a, const Embedding& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += static_cast<double>(a.values()[i]) * b.values()[i];
  return s;
}

class FixedModel : public LanguageModel {
 public:
  explicit FixedModel(std::string answer, bool fail = false) : answer_(std::move(answer)), fail_(fail) {}
  std::string identity() const override { return "fixed"; }
  std::string complete(const CompletionRequest& req) const override {
    if (fail_) throw ProviderError("down");
    last_task = req.task;
    return answer_;
  }
  mutable std::string last_task;

 private:
  std::string answer_;
  bool fail_;
};

}  // namespace

TEST_CASE("modularity: closed forms and the dense-matrix oracle") {
  const auto triangles = from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(modularity(triangles, {0, 0, 0, 0, 0, 0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(modularity(triangles, {0, 0, 0, 1, 1, 1}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(modularity(WeightedGraph(4), {0, 1, 2, 3}) == 0.0);
  CHECK_THROWS_AS(modularity(triangles, {0, 0}), ValidationError);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 9;
    auto g = random_weighted(rng, n, 0.4, t % 2 == 1);
    if (t % 3 == 0) g.add_edge(0, 0, 2.0);
    std::vector<int> c(n);
    for (auto& x : c) x = static_cast<int>(rng() % 4);
    const double q = modularity(g, c);
    CHECK(std::fabs(q - reference_modularity(g, c)) < 1e-12);
    CHECK(q >= -0.5 - 1e-12);
    CHECK(q <= 1.0);
  }
}

TEST_CASE("louvain: two cliques joined by one edge") {
  const auto g = two_cliques_with_bridge();
  const auto r = louvain(g);
  CHECK(groups(r.community) == kTwoCliques);
  // The split is also the exhaustive optimum over all 115975 partitions.
  CHECK(r.modularity == doctest::Approx(exhaustive_max_modularity(g)).epsilon(1e-12));
  CHECK(is_local_optimum(g, r.community));
}

TEST_CASE("louvain: trivial graphs") {
  const auto empty = louvain(WeightedGraph(0));
  CHECK(empty.community.empty());
  const auto edgeless = louvain(WeightedGraph(4));
  CHECK(edgeless.community == std::vector<int>{1, 2, 3, 4});
  CHECK(edgeless.modularity == 0.0);
  const auto tri = louvain(from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(tri.community == std::vector<int>{1, 1, 1});
}

TEST_CASE("louvain properties on every small random graph") {
  std::mt19937_64 rng(11);
  int exact = 0, total = 0;
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + rng() % 7;
    const auto g = random_weighted(rng, n, 0.2 + 0.1 * (t % 5), t % 2 == 0);
    const auto r = louvain(g);
    REQUIRE(r.community.size() == n);
    std::vector<int> singletons(n), one(n, 0);
    for (std::size_t i = 0; i < n; ++i) singletons[i] = static_cast<int>(i);
    CHECK(r.modularity >= modularity(g, singletons) - 1e-12);
    CHECK(r.modularity >= modularity(g, one) - 1e-12);
    for (std::size_t p = 1; p < r.pass_modularity.size(); ++p)
      CHECK(r.pass_modularity[p] >= r.pass_modularity[p - 1] - 1e-12);
    CHECK(is_local_optimum(g, r.community));
    const double best = exhaustive_max_modularity(g);
    CHECK(r.modularity <= best + 1e-12);
    if (r.modularity >= best - 1e-12) ++exact;
    ++total;
  }
  MESSAGE("louvain reached the exhaustive optimum on " << exact << "/" << total << " graphs");
  CHECK(exact * 10 >= total * 9);
}

TEST_CASE("label propagation: edgeless, determinism, two cliques") {
  const auto edgeless = label_propagation(WeightedGraph(5), 1);
  CHECK(edgeless.labels == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(edgeless.converged);

  const auto g = two_cliques_with_bridge();
  int clean = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto a = label_propagation(g, seed);
    const auto b = label_propagation(g, seed);
    CHECK(a.labels == b.labels);
    CHECK(a.converged);
    CHECK(is_label_fixed_point(g, a.labels));
    if (groups(a.labels) == kTwoCliques) ++clean;
  }
  MESSAGE("two cliques recovered for " << clean << "/100 seeds");
  CHECK(clean == 100);
}

TEST_CASE("label propagation reaches a fixed point on random graphs") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_weighted(rng, 5 + rng() % 40, 0.05 + 0.02 * (t % 10), t % 2 == 0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto r = label_propagation(g, seed);
      CHECK(r.converged);
      CHECK(is_label_fixed_point(g, r.labels));
      CHECK(r.labels.size() == g.size());
    }
  }
}

TEST_CASE("misc_group") {
  ClusterAssignment a;
  std::vector<NodeId> ids;
  for (int i = 0; i < 15; ++i) ids.push_back(NodeId(static_cast<std::uint64_t>(i + 1)));
  const std::vector<int> cluster = {1, 1, 1, 1, 1, 2, 2, 3, 4, 4, 4, 4, 4, 4, 4};
  for (std::size_t i = 0; i < ids.size(); ++i) a.cluster_of[ids[i]] = cluster[i];

  const auto m = misc_group(a, 3);
  const auto q = ClusteringQuality::of(m, 0.0);
  CHECK(q.count == 2);
  CHECK(q.sizes == std::vector<std::size_t>{7, 5});
  CHECK(q.unassigned == 3);
  CHECK(m.members().at(kMiscCluster).size() == 3);
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (cluster[i] == 1 || cluster[i] == 4) CHECK(m.cluster_of.at(ids[i]) == cluster[i]);

  CHECK(misc_group(a, 1).cluster_of == a.cluster_of);

  ClusterAssignment singles;
  singles.cluster_of[ids[0]] = 1;
  singles.cluster_of[ids[1]] = 2;
  singles.cluster_of[ids[2]] = kUnassigned;
  for (const auto& [f, c] : misc_group(singles).cluster_of) CHECK(c == kMiscCluster);

  // Property: surviving clusters keep their members for any min_size.
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    ClusterAssignment r;
    for (std::size_t i = 0; i < ids.size(); ++i) r.cluster_of[ids[i]] = static_cast<int>(rng() % 6) - 1;
    const std::size_t min_size = rng() % 5;
    const auto before = r.members();
    const auto after = misc_group(r, min_size).members();
    for (const auto& [c, files] : before)
      if (c > 0 && files.size() >= min_size) CHECK(after.at(c) == files);
    std::size_t total = 0;
    for (const auto& [c, files] : after) {
      CHECK(c >= 0);
      total += files.size();
    }
    CHECK(total == ids.size());
  }
}

TEST_CASE("cluster labels") {
  CHECK(stub_cluster_label({"src/console/commands/new.py", "src/console/commands/init.py",
                            "src/console/commands/add.py"}) == "src/console/commands");
  CHECK(stub_cluster_label({"src/a/x.py", "src/b/y.py"}) == "src");
  CHECK(stub_cluster_label({"lib/thing.py"}) == "thing.py");
  CHECK(stub_cluster_label({"user_model.py", "user_view.py", "admin.py"}) == "user");

  MiniRepo r;
  const NodeId a = r.file("pkg/cmd/a.py");
  const NodeId b = r.file("pkg/cmd/b.py");
  const NodeId c = r.file("other/c.py");
  ClusterAssignment asg;
  asg.cluster_of = {{a, 1}, {b, 1}, {c, kMiscCluster}};
  const auto stub = label_clusters(asg, r.g);
  CHECK(stub.labels.at(1) == "pkg/cmd");
  CHECK(stub.labels.at(kMiscCluster) == "misc");

  FixedModel model("  Command handlers.\nextra");
  const auto llm = label_clusters(asg, r.g, &model);
  CHECK(llm.labels.at(1) == "Command handlers");
  CHECK(llm.labels.at(kMiscCluster) == "misc");
  CHECK(model.last_task == "label_cluster");

  FixedModel down("", true);
  std::vector<std::string> warnings;
  const auto fallback = label_clusters(asg, r.g, &down, &warnings);
  CHECK(fallback.labels.at(1) == "pkg/cmd");
  CHECK(warnings.size() == 1);
}

TEST_CASE("file graph projection counts relations between files") {
  MiniRepo r;
  const NodeId a = r.file("a.py");
  const NodeId b = r.file("b.py");
  const NodeId t = r.file("test_a.py");
  const NodeId fa = r.function(a, "fa");
  const NodeId fa2 = r.function(a, "fa2");
  const NodeId fb = r.function(b, "fb");
  r.g.add_edge(fa, fb, EdgeKind::Calls);
  r.g.add_edge(fa2, fb, EdgeKind::Calls);
  r.g.add_edge(fa, fa2, EdgeKind::Calls);  // same file, dropped
  r.g.add_edge(a, b, EdgeKind::Refers);
  r.g.add_edge(t, a, EdgeKind::Tests);
  const auto view = project_file_graph(r.g, {a, b, t});
  const auto ia = view.index.at(a), ib = view.index.at(b), it = view.index.at(t);
  CHECK(view.graph.neighbors(ia).at(ib) == 3.0);
  CHECK(view.graph.neighbors(ia).at(it) == 1.0);
  CHECK(view.graph.neighbors(ib).count(it) == 0);
  CHECK(view.graph.total_weight() == 4.0);

  CoChangeCounts co = {{{"b.py", "test_a.py"}, 2.0}};
  const auto with_co = project_file_graph(r.g, {a, b, t}, &co, 0.5);
  CHECK(with_co.graph.neighbors(ib).at(it) == 1.0);
  const auto features = file_features(r.g, with_co, &co);
  REQUIRE(features.size() == 3);
  double pr = 0.0;
  for (const auto& f : features) pr += f.centrality;
  CHECK(pr == doctest::Approx(1.0));
  CHECK(features[0].degree == 2);
  CHECK(features[1].co_change == 2.0);
}

TEST_CASE("manifold reduction helpers") {
  const auto c = fit_curve(0.1, 1.0);
  CHECK(c.a == doctest::Approx(1.577).epsilon(0.01));
  CHECK(c.b == doctest::Approx(0.895).epsilon(0.01));

  std::mt19937_64 rng(1);
  PointSet pts;
  for (int i = 0; i < 30; ++i) {
    std::vector<double> p(12);
    for (auto& x : p) x = static_cast<double>(rng() % 1000) / 1000.0;
    pts.push_back(p);
  }
  const auto a = manifold_reduce(pts);
  const auto b = manifold_reduce(pts);
  CHECK(a == b);
  CHECK(a.size() == 30);
  CHECK(a[0].size() == 8);
  for (const auto& p : a)
    for (double x : p) CHECK(std::isfinite(x));

  // k-means and density clustering on three separated groups on a line.
  PointSet line;
  for (double base : {0.0, 10.0, 20.0})
    for (int i = 0; i < 5; ++i) line.push_back({base + 0.1 * i});
  const auto km = kmeans(line, 3, 7);
  CHECK(groups(km).size() == 3);
  CHECK(groups(km).count({0, 1, 2, 3, 4}) == 1);
  const auto db = dbscan(line, 0.15, 2);
  CHECK(groups(db) == std::set<std::set<std::size_t>>{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, {10, 11, 12, 13, 14}});
  line.push_back({100.0});
  CHECK(dbscan(line, 0.15, 2).back() == -1);
  CHECK(silhouette(line, std::vector<int>(16, 0)) == 0.0);
}

TEST_CASE("semantic clustering: identical embeddings give one cluster") {
  const auto e = Embedding::normalized({1.0f, 2.0f, 3.0f});
  const auto r = semantic_cluster({NodeId(1), NodeId(2)}, {e, e});
  CHECK(r.quality.count == 1);
  CHECK(r.warnings.size() == 1);
  CHECK_THROWS_AS(semantic_cluster({NodeId(1)}, {e}), ValidationError);
}

TEST_CASE("semantic clustering separates two blobs") {
  std::mt19937_64 rng(21);
  const int dim = 32;
  std::vector<double> ca(dim, 0.0), cb(dim, 0.0);
  ca[0] = 1.0;
  cb[1] = 1.0;
  std::vector<NodeId> files;
  std::vector<Embedding> embs;
  for (int i = 0; i < 40; ++i) {
    files.push_back(NodeId(static_cast<std::uint64_t>(i + 1)));
    embs.push_back(noisy(rng, i < 20 ? ca : cb, 0.03));
  }
  for (int i = 0; i < 40; ++i)
    for (int j = i + 1; j < 40; ++j) {
      const double s = cos_sim(embs[static_cast<std::size_t>(i)], embs[static_cast<std::size_t>(j)]);
      if ((i < 20) == (j < 20)) REQUIRE(s > 0.9);
      else REQUIRE(s < 0.1);
    }
  const auto r = semantic_cluster(files, embs);
  CHECK(r.quality.count == 2);
  CHECK(r.quality.unassigned == 0);
  std::set<int> first, second;
  for (int i = 0; i < 40; ++i) (i < 20 ? first : second).insert(r.assignment.cluster_of.at(files[static_cast<std::size_t>(i)]));
  CHECK(first.size() == 1);
  CHECK(second.size() == 1);
  CHECK(first != second);
  CHECK(r.warnings.empty());
  const auto again = semantic_cluster(files, embs);
  CHECK(again.assignment.cluster_of == r.assignment.cluster_of);
}

TEST_CASE("semantic clustering at repository scale stays within the selection bounds") {
  std::mt19937_64 rng(83);
  const int dim = 64, topics = 16;
  std::vector<std::vector<double>> centers;
  for (int t = 0; t < topics; ++t) {
    const auto v = random_unit_vector(rng, dim);
    centers.emplace_back(v.begin(), v.end());
  }
  std::vector<NodeId> files;
  std::vector<Embedding> embs;
  for (int i = 0; i < 83; ++i) {
    files.push_back(NodeId(static_cast<std::uint64_t>(i + 1)));
    embs.push_back(noisy(rng, centers[static_cast<std::size_t>(i % topics)], 0.06));
  }
  const auto r = semantic_cluster(files, embs);
  MESSAGE("83 files -> " << r.quality.count << " clusters, " << r.quality.unassigned << " in misc");
  CHECK(r.quality.count >= 4);
  CHECK(r.quality.count <= 28);
  // The planted topics are well separated, so all 16 come back.
  CHECK(r.quality.count == 16);
  std::size_t rejected = 0;
  for (const auto& c : r.candidates) rejected += c.rejected ? 1 : 0;
  CHECK(rejected < r.candidates.size());
}

TEST_CASE("cluster_repository partitions the scope and emits the result shape") {
  MiniRepo r;
  std::vector<NodeId> files;
  for (const char* dir : {"alpha", "beta"})
    for (int i = 0; i < 4; ++i) files.push_back(r.file(std::string(dir) + "/m" + std::to_string(i) + ".py"));
  const NodeId lone = r.file("lone.py");
  const NodeId readme = r.file("README.md");
  for (std::size_t base : {0u, 4u})
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) r.g.add_edge(files[base + i], files[base + j], EdgeKind::Refers);
  r.g.add_edge(files[3], files[4], EdgeKind::Refers);

  for (auto method : {ClusterMethod::Louvain, ClusterMethod::LabelPropagation}) {
    ClusterOptions opt;
    opt.method = method;
    const auto res = cluster_repository(r.g, opt);
    CHECK(res.assignment.cluster_of.size() == 9);
    CHECK(res.assignment.cluster_of.count(readme) == 0);
    CHECK(res.assignment.cluster_of.at(lone) == kMiscCluster);
    CHECK(res.quality.count == 2);
    CHECK(res.quality.unassigned == 1);
    const auto j = res.to_json(r.g);
    CHECK(j.at("method") == std::string(to_string(method)));
    if (method == ClusterMethod::Louvain) CHECK(j.at("seed").is_null());
    else CHECK(j.at("seed") == 42);
    std::set<std::string> labels;
    std::size_t listed = 0;
    for (const auto& c : j.at("clusters")) {
      labels.insert(c.at("label").get<std::string>());
      listed += c.at("files").size();
    }
    CHECK(listed == 9);
    CHECK(labels == std::set<std::string>{"alpha", "beta", "misc"});
    CHECK(j.at("quality").at("sizes") == nlohmann::json{4, 4});
  }
  CHECK(parse_cluster_method("LPA") == ClusterMethod::LabelPropagation);
  CHECK_THROWS_AS(parse_cluster_method("kmeans"), ValidationError);
}
