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

#include "repograph/clustering/clustering.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "repograph/clustering/reduce.hpp"
#include "repograph/core/error.hpp"
#include "repograph/core/file_types.hpp"
#include "repograph/enrich/prompts.hpp"
#include "repograph/retrieval/search.hpp"

namespace repograph {

std::string_view to_string(ClusterMethod m) {
  switch (m) {
    case ClusterMethod::Semantic: return "semantic";
    case ClusterMethod::Louvain: return "louvain";
    case ClusterMethod::LabelPropagation: return "label-propagation";
  }
  return "unknown";
}

ClusterMethod parse_cluster_method(std::string_view s) {
  std::string v;
  for (char c : s) v += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (v == "semantic") return ClusterMethod::Semantic;
  if (v == "louvain") return ClusterMethod::Louvain;
  if (v == "label-propagation" || v == "lpa") return ClusterMethod::LabelPropagation;
  throw ValidationError("unknown clustering method '" + std::string(s) + "'");
}

std::map<int, std::vector<NodeId>> ClusterAssignment::members() const {
  std::map<int, std::vector<NodeId>> out;
  for (const auto& [file, c] : cluster_of) out[c].push_back(file);
  return out;
}

void ClusterAssignment::validate() const {
  for (const auto& [file, c] : cluster_of)
    if (c < kUnassigned) throw ValidationError("invalid cluster id " + std::to_string(c) + " for " + file.str());
}

ClusteringQuality ClusteringQuality::of(const ClusterAssignment& a, double score) {
  ClusteringQuality q;
  q.score = score;
  for (const auto& [c, files] : a.members()) {
    if (c == kMiscCluster || c == kUnassigned) {
      q.unassigned += files.size();
    } else {
      ++q.count;
      q.sizes.push_back(files.size());
    }
  }
  std::sort(q.sizes.rbegin(), q.sizes.rend());
  return q;
}

nlohmann::json ClusteringQuality::to_json() const {
  return {{"count", count}, {"sizes", sizes}, {"unassigned", unassigned}, {"score", score}};
}

std::vector<NodeId> clustering_scope(const KnowledgeGraph& graph, const ClusterScope& scope) {
  std::vector<std::pair<std::string, NodeId>> files;
  for (const auto& [id, n] : graph.nodes())
    if (n.kind == NodeKind::File && (!scope.source_only || category_for_path(n.path) == FileCategory::Source))
      files.emplace_back(n.path, id);
  std::sort(files.begin(), files.end());
  std::vector<NodeId> out;
  for (const auto& f : files) out.push_back(f.second);
  return out;
}

FileGraphView project_file_graph(const KnowledgeGraph& graph, const std::vector<NodeId>& files,
                                 const CoChangeCounts* co_change, double co_change_weight) {
  FileGraphView v;
  v.files = files;
  v.graph = WeightedGraph(files.size());
  for (std::size_t i = 0; i < files.size(); ++i)
    if (!v.index.emplace(files[i], i).second) throw ValidationError("file listed twice: " + files[i].str());
  const auto index_of = [&](NodeId n) -> std::optional<std::size_t> {
    const auto f = defining_file(graph, n);
    if (!f) return std::nullopt;
    const auto it = v.index.find(*f);
    if (it == v.index.end()) return std::nullopt;
    return it->second;
  };
  for (const Edge& e : graph.edges_sorted()) {
    if (e.kind != EdgeKind::Refers && e.kind != EdgeKind::Calls && e.kind != EdgeKind::Tests) continue;
    const auto a = index_of(e.src);
    const auto b = index_of(e.dst);
    if (a && b && *a != *b) v.graph.add_edge(*a, *b, 1.0);
  }
  if (co_change) {
    std::map<std::string, std::size_t> by_path;
    for (std::size_t i = 0; i < files.size(); ++i) by_path.emplace(graph.at(files[i]).path, i);
    for (const auto& [pair, count] : *co_change) {
      const auto a = by_path.find(pair.first);
      const auto b = by_path.find(pair.second);
      if (a != by_path.end() && b != by_path.end() && a->second != b->second && count > 0.0)
        v.graph.add_edge(a->second, b->second, co_change_weight * count);
    }
  }
  return v;
}

namespace {

std::vector<double> pagerank(const WeightedGraph& g, double damping = 0.85) {
  const std::size_t n = g.size();
  if (n == 0) return {};
  std::vector<double> rank(n, 1.0 / static_cast<double>(n)), next(n);
  std::vector<double> out_w(n, 0.0);
  for (std::size_t u = 0; u < n; ++u)
    for (const auto& [v, w] : g.neighbors(u)) out_w[u] += w;
  for (int it = 0; it < 200; ++it) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      if (out_w[u] == 0.0) dangling += rank[u];
    std::fill(next.begin(), next.end(), (1.0 - damping + damping * dangling) / static_cast<double>(n));
    for (std::size_t u = 0; u < n; ++u)
      for (const auto& [v, w] : g.neighbors(u)) next[v] += damping * rank[u] * w / out_w[u];
    double diff = 0.0;
    for (std::size_t u = 0; u < n; ++u) diff += std::fabs(next[u] - rank[u]);
    rank.swap(next);
    if (diff < 1e-12) break;
  }
  return rank;
}

const Embedding* semantic_view(const Node& n) {
  if (n.description_embedding && !n.description_embedding->empty()) return &*n.description_embedding;
  if (n.code_embedding && !n.code_embedding->empty()) return &*n.code_embedding;
  return nullptr;
}

}  // namespace

std::vector<FileFeatureView> file_features(const KnowledgeGraph& graph, const FileGraphView& view,
                                           const CoChangeCounts* co_change) {
  const auto pr = pagerank(view.graph);
  std::map<std::string, double> churn;
  if (co_change)
    for (const auto& [pair, count] : *co_change) {
      churn[pair.first] += count;
      churn[pair.second] += count;
    }
  std::vector<FileFeatureView> out;
  for (std::size_t i = 0; i < view.files.size(); ++i) {
    const Node& n = graph.at(view.files[i]);
    FileFeatureView f;
    f.file = n.id;
    f.degree = view.graph.neighbors(i).size();
    f.weighted_degree = view.graph.degree(i);
    f.centrality = pr[i];
    if (const Embedding* e = semantic_view(n)) f.semantic = *e;
    if (co_change) f.co_change = churn.count(n.path) ? churn[n.path] : 0.0;
    out.push_back(std::move(f));
  }
  return out;
}

ClusterAssignment misc_group(ClusterAssignment a, std::size_t min_size) {
  std::map<int, std::size_t> sizes;
  for (const auto& [file, c] : a.cluster_of) ++sizes[c];
  for (auto& [file, c] : a.cluster_of)
    if (c == kUnassigned || (c != kMiscCluster && sizes[c] < min_size)) c = kMiscCluster;
  std::map<int, std::optional<std::string>> labels;
  for (const auto& [file, c] : a.cluster_of) {
    const auto it = a.labels.find(c);
    labels[c] = it == a.labels.end() ? std::nullopt : it->second;
  }
  a.labels = std::move(labels);
  return a;
}

namespace {

std::vector<std::string> split_path(const std::string& p) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= p.size()) {
    const std::size_t slash = p.find('/', start);
    const std::size_t end = slash == std::string::npos ? p.size() : slash;
    if (end > start) out.push_back(p.substr(start, end - start));
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  return out;
}

std::string first_line(const std::string& s) {
  std::string line = s.substr(0, s.find('\n'));
  const auto b = line.find_first_not_of(" \t\r\"'`*#");
  if (b == std::string::npos) return "";
  const auto e = line.find_last_not_of(" \t\r\"'`*.");
  return line.substr(b, e - b + 1);
}

}  // namespace

std::string stub_cluster_label(const std::vector<std::string>& member_paths) {
  if (member_paths.empty()) return "";
  if (member_paths.size() == 1) return std::string(basename_of(member_paths.front()));
  std::vector<std::string> common;
  bool first = true;
  for (const auto& p : member_paths) {
    auto dirs = split_path(p);
    if (!dirs.empty()) dirs.pop_back();
    if (first) {
      common = dirs;
      first = false;
      continue;
    }
    std::size_t k = 0;
    while (k < common.size() && k < dirs.size() && common[k] == dirs[k]) ++k;
    common.resize(k);
  }
  if (!common.empty()) {
    std::string out;
    for (const auto& d : common) out += (out.empty() ? "" : "/") + d;
    return out;
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& p : member_paths) {
    std::string stem(basename_of(p));
    if (const auto dot = stem.find('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
    std::string tok;
    for (char c : stem + " ") {
      if (std::isalnum(static_cast<unsigned char>(c))) {
        tok += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      } else if (!tok.empty()) {
        ++counts[tok];
        tok.clear();
      }
    }
  }
  std::string best;
  std::size_t best_n = 0;
  for (const auto& [t, n] : counts)
    if (n > best_n) {
      best = t;
      best_n = n;
    }
  return best;
}

ClusterAssignment label_clusters(ClusterAssignment a, const KnowledgeGraph& graph, const LanguageModel* llm,
                                 std::vector<std::string>* warnings) {
  a.labels.clear();
  for (const auto& [c, files] : a.members()) {
    if (c == kMiscCluster) {
      a.labels[c] = "misc";
      continue;
    }
    if (c == kUnassigned) continue;
    std::vector<std::string> paths;
    for (NodeId f : files) paths.push_back(graph.at(f).path);
    std::sort(paths.begin(), paths.end());
    std::optional<std::string> label;
    if (llm) {
      std::string content;
      for (NodeId f : files) {
        const Node& n = graph.at(f);
        content += n.path + (n.description ? ": " + *n.description : "") + "\n";
      }
      try {
        const std::string prompt = prompts::render(prompts::label_cluster_template(), {{"content", content}});
        const std::string answer = first_line(llm->complete({"label_cluster", prompt, content}));
        if (!answer.empty()) label = answer;
        else if (warnings) warnings->push_back("cluster " + std::to_string(c) + ": empty label from provider");
      } catch (const Error& e) {
        if (warnings) warnings->push_back("cluster " + std::to_string(c) + ": label provider failed: " + e.what());
      }
    }
    if (!label) label = stub_cluster_label(paths);
    if (label->empty()) label = "cluster " + std::to_string(c);
    a.labels[c] = *label;
  }
  return a;
}

namespace {

// Cluster ids 1..K by first appearance, misc kept at 0.
std::vector<int> number_clusters(const std::vector<int>& raw) {
  std::map<int, int> remap;
  std::vector<int> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0) {
      out[i] = kMiscCluster;
      continue;
    }
    out[i] = remap.emplace(raw[i], static_cast<int>(remap.size()) + 1).first->second;
  }
  return out;
}

// Moves clusters smaller than min_size to -1.
void drop_small(std::vector<int>& labels, std::size_t min_size) {
  std::map<int, std::size_t> sizes;
  for (int l : labels)
    if (l >= 0) ++sizes[l];
  for (int& l : labels)
    if (l >= 0 && sizes[l] < min_size) l = -1;
}

double kth_quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (v[hi] - v[lo]) * (pos - static_cast<double>(lo));
}

ClusterAssignment make_assignment(ClusterMethod m, std::uint64_t seed, const std::vector<NodeId>& files,
                                  const std::vector<int>& labels) {
  ClusterAssignment a;
  a.method = m;
  a.seed = seed;
  for (std::size_t i = 0; i < files.size(); ++i) a.cluster_of[files[i]] = labels[i];
  for (int l : labels) a.labels[l] = std::nullopt;
  return a;
}

}  // namespace

ClusterResult semantic_cluster(const std::vector<NodeId>& files, const std::vector<Embedding>& embeddings,
                               const SemanticClusterOptions& opt) {
  if (files.size() != embeddings.size()) throw ValidationError("one embedding per file is required");
  if (files.size() < 2) throw ValidationError("semantic clustering needs at least two files with embeddings");
  if (opt.dims < 1 || opt.max_cluster_divisor < 1) throw ValidationError("invalid clustering options");
  const std::size_t n = files.size();
  PointSet points;
  for (const auto& e : embeddings) {
    if (e.dim() != embeddings.front().dim() || e.empty()) throw DimensionError("embeddings have mixed dimensions");
    points.emplace_back(e.values().begin(), e.values().end());
  }
  ManifoldOptions mo;
  mo.n_components = opt.dims;
  mo.n_neighbors = opt.n_neighbors;
  mo.min_dist = opt.min_dist;
  mo.n_epochs = opt.epochs;
  mo.seed = opt.seed;
  const PointSet reduced = manifold_reduce(points, mo);

  const std::size_t max_clusters = (n + static_cast<std::size_t>(opt.max_cluster_divisor) - 1) /
                                   static_cast<std::size_t>(opt.max_cluster_divisor);
  ClusterResult r;
  std::optional<std::vector<int>> best;
  double best_score = -2.0;
  const auto consider = [&](std::string algorithm, std::string params, std::vector<int> labels) {
    drop_small(labels, opt.misc_min_size);
    SemanticCandidate c;
    c.algorithm = std::move(algorithm);
    c.params = std::move(params);
    std::set<int> ids;
    for (int l : labels) {
      if (l < 0) ++c.unassigned;
      else ids.insert(l);
    }
    c.clusters = ids.size();
    if (c.clusters > max_clusters) c.rejected = "too fractional";
    else if (c.clusters < opt.min_clusters) c.rejected = "too general";
    else if (static_cast<double>(c.unassigned) > opt.max_unassigned_fraction * static_cast<double>(n))
      c.rejected = "too many unassigned";
    if (!c.rejected) {
      // Unassigned files count as 0 so dropping hard points never pays.
      c.score = silhouette(reduced, labels) * static_cast<double>(n - c.unassigned) / static_cast<double>(n);
      if (c.score > best_score) {
        best_score = c.score;
        best = labels;
      }
    }
    r.candidates.push_back(std::move(c));
  };

  // k-means over 2..max_clusters, thinned geometrically when the range is wide.
  std::set<std::size_t> ks;
  const std::size_t hi = std::min(max_clusters, n - 1);
  if (hi >= 2) {
    const std::size_t span = hi - 1;
    const std::size_t count = std::min(span, opt.max_kmeans_candidates);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      ks.insert(static_cast<std::size_t>(std::llround(2.0 * std::pow(static_cast<double>(hi) / 2.0, t))));
    }
  }
  for (std::size_t k : ks)
    consider("kmeans", "k=" + std::to_string(k), kmeans(reduced, static_cast<int>(k), opt.seed + k));

  // Density clustering with eps at quantiles of the min_points-th neighbour distance.
  for (int mp : opt.density_min_points) {
    if (mp < 2 || static_cast<std::size_t>(mp) >= n) continue;
    std::vector<double> kdist;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> d;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) d.push_back(std::sqrt(squared_distance(reduced[i], reduced[j])));
      std::nth_element(d.begin(), d.begin() + (mp - 1), d.end());
      kdist.push_back(d[static_cast<std::size_t>(mp - 1)]);
    }
    for (double q : opt.density_quantiles) {
      const double eps = kth_quantile(kdist, q);
      if (!(eps > 0.0)) continue;
      char buf[64];
      std::snprintf(buf, sizeof buf, "min_points=%d,eps=%.4g", mp, eps);
      consider("density", buf, dbscan(reduced, eps, mp));
    }
  }

  std::vector<int> labels;
  if (best) {
    labels = number_clusters(*best);
    r.quality.score = best_score;
  } else {
    labels.assign(n, 1);
    r.warnings.push_back("every clustering candidate was rejected; all files form one cluster");
  }
  r.assignment = make_assignment(ClusterMethod::Semantic, opt.seed, files, labels);
  r.quality = ClusteringQuality::of(r.assignment, best ? best_score : 0.0);
  return r;
}

ClusterResult louvain_cluster(const FileGraphView& view, double resolution) {
  ClusterResult r;
  const auto lv = louvain(view.graph, resolution);
  r.assignment = make_assignment(ClusterMethod::Louvain, 0, view.files, lv.community);
  r.quality = ClusteringQuality::of(r.assignment, lv.modularity);
  return r;
}

ClusterResult label_propagation_cluster(const FileGraphView& view, std::uint64_t seed, int max_sweeps) {
  ClusterResult r;
  const auto lp = label_propagation(view.graph, seed, max_sweeps);
  if (!lp.converged)
    r.warnings.push_back("label propagation stopped after " + std::to_string(lp.sweeps) + " sweeps without converging");
  r.assignment = make_assignment(ClusterMethod::LabelPropagation, seed, view.files, lp.labels);
  r.quality = ClusteringQuality::of(r.assignment, modularity(view.graph, lp.labels));
  return r;
}

ClusterResult cluster_repository(const KnowledgeGraph& graph, const ClusterOptions& options) {
  std::vector<NodeId> files = clustering_scope(graph, options.scope);
  ClusterResult r;
  double score = 0.0;
  if (options.method == ClusterMethod::Semantic) {
    std::vector<NodeId> with;
    std::vector<Embedding> embs;
    std::size_t missing = 0;
    for (NodeId f : files) {
      if (const Embedding* e = semantic_view(graph.at(f))) {
        with.push_back(f);
        embs.push_back(*e);
      } else {
        ++missing;
      }
    }
    auto opt = options.semantic;
    opt.seed = options.seed;
    opt.misc_min_size = options.misc_min_size;
    r = semantic_cluster(with, embs, opt);
    if (missing) r.warnings.push_back(std::to_string(missing) + " files without embeddings were left out");
    score = r.quality.score;
  } else {
    const auto view = project_file_graph(graph, files, options.co_change);
    r = options.method == ClusterMethod::Louvain ? louvain_cluster(view, options.resolution)
                                                 : label_propagation_cluster(view, options.seed);
    score = r.quality.score;
  }
  r.assignment = misc_group(std::move(r.assignment), options.misc_min_size);
  r.assignment = label_clusters(std::move(r.assignment), graph, options.labeler, &r.warnings);
  r.quality = ClusteringQuality::of(r.assignment, score);
  return r;
}

nlohmann::json ClusterResult::to_json(const KnowledgeGraph& graph) const {
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& [c, files] : assignment.members()) {
    std::vector<std::string> paths;
    for (NodeId f : files) paths.push_back(graph.at(f).path);
    std::sort(paths.begin(), paths.end());
    const auto it = assignment.labels.find(c);
    nlohmann::json label = it != assignment.labels.end() && it->second ? nlohmann::json(*it->second) : nlohmann::json();
    clusters.push_back({{"id", c}, {"label", label}, {"files", paths}});
  }
  nlohmann::json j = {{"method", to_string(assignment.method)},
                      {"seed", assignment.method == ClusterMethod::Louvain ? nlohmann::json()
                                                                           : nlohmann::json(assignment.seed)},
                      {"clusters", clusters},
                      {"quality", quality.to_json()}};
  if (!warnings.empty()) j["warnings"] = warnings;
  return j;
}

}  // namespace repograph
