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

#include "repograph/retrieval/search.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <tuple>

#include "repograph/core/error.hpp"

namespace repograph {

void RetrievalRequest::validate() const {
  if (std::all_of(query_text.begin(), query_text.end(), [](unsigned char c) { return std::isspace(c); }))
    throw ValidationError("query must not be empty");
  if (k < 1) throw ValidationError("k must be at least 1");
  if (budget_fraction && !(*budget_fraction > 0.0 && *budget_fraction <= 1.0))
    throw ValidationError("budget_fraction must be in (0, 1]");
  if (traversal.mode == TraversalConfig::Mode::Custom && traversal.spec.depth < 1)
    throw ValidationError("traversal depth must be at least 1");
}

std::size_t semantic_limit(const KnowledgeGraph& graph, const RetrievalRequest& request) {
  if (!request.budget_fraction) return 4 * request.k;
  std::size_t files = 0;
  for (const auto& [id, n] : graph.nodes())
    if (n.kind == NodeKind::File) ++files;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(*request.budget_fraction * files)));
}

nlohmann::json SearchResponse::to_json(const KnowledgeGraph& graph) const {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : this->results) {
    nlohmann::json prov = nlohmann::json::array();
    for (Stage s : r.provenance) prov.push_back(std::string(to_string(s)));
    nlohmann::json ev = nlohmann::json::array();
    for (NodeId id : r.evidence) {
      const Node* n = graph.find(id);
      ev.push_back({{"id", id.str()},
                    {"kind", n ? std::string(to_string(n->kind)) : ""},
                    {"name", n ? n->name : ""},
                    {"path", n ? n->path : ""}});
    }
    results.push_back({{"path", r.path},
                       {"node", r.file.str()},
                       {"score", r.score ? nlohmann::json(*r.score) : nlohmann::json(nullptr)},
                       {"rank", r.rank},
                       {"provenance", prov},
                       {"evidence_nodes", ev}});
  }
  nlohmann::json query = {{"raw_text", bundle.raw_text},
                          {"mode_requested", std::string(to_string(bundle.requested))},
                          {"mode_effective", std::string(to_string(bundle.effective))},
                          {"embedded_texts", bundle.texts}};
  if (bundle.preprocessed_text) query["preprocessed_text"] = *bundle.preprocessed_text;
  return {{"results", results},
          {"query", query},
          {"diagnostics", {{"stage_warnings", stage_warnings}, {"timings_ms", timings_ms}}}};
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Accumulator {
  std::optional<double> score;
  std::set<Stage> provenance;
  std::set<NodeId> evidence;

  void offer(double s) {
    if (!score || s > *score) score = s;
  }
};

}  // namespace

SearchResponse search_relevant(const KnowledgeGraph& graph, const RetrievalRequest& request,
                               const SearchProviders& providers) {
  request.validate();
  if (!providers.embedder) throw ValidationError("search needs an embedder");
  const bool enriched = std::any_of(graph.nodes().begin(), graph.nodes().end(), [](const auto& kv) {
    return kv.second.description_embedding || kv.second.code_embedding;
  });
  if (!enriched) throw ValidationError("graph has no embeddings; enrich it before searching");

  SearchResponse resp;
  const auto root = graph.root();
  const std::string context = root ? graph.at(*root).description.value_or(graph.at(*root).name) : "";

  auto t = Clock::now();
  resp.bundle = preprocess_query(request.query_text, request.mode, providers.llm, *providers.embedder, context);
  for (const auto& w : resp.bundle.warnings) resp.stage_warnings.push_back("preprocess: " + w);
  resp.timings_ms["preprocess"] = ms_since(t);

  t = Clock::now();
  SemanticOptions sem = request.semantic;
  sem.limit = semantic_limit(graph, request);
  std::vector<std::string> warnings;
  const auto hits = semantic_search(graph, resp.bundle.embeddings, sem, &warnings);
  for (const auto& w : warnings) resp.stage_warnings.push_back("semantic: " + w);
  resp.timings_ms["semantic"] = ms_since(t);

  t = Clock::now();
  std::map<NodeId, NodeId> expanded;
  try {
    expanded = traverse_expand_attributed(graph, hits, request.traversal);
  } catch (const std::exception& e) {
    resp.stage_warnings.push_back(std::string("traversal: ") + e.what());
  }
  resp.timings_ms["traversal"] = ms_since(t);

  t = Clock::now();
  std::set<NodeId> discovered;
  if (request.enable_discovery) {
    warnings.clear();
    discovered = discover_mentioned_files(request.query_text, graph, providers.llm, &warnings);
    for (const auto& w : warnings) resp.stage_warnings.push_back("discovery: " + w);
  }
  resp.timings_ms["discovery"] = ms_since(t);

  std::map<NodeId, Accumulator> files;
  std::map<NodeId, double> hit_score;
  for (const auto& h : hits) {
    hit_score.emplace(h.node, h.score);
    const auto f = defining_file(graph, h.node);
    if (!f) continue;
    auto& acc = files[*f];
    acc.offer(h.score);
    acc.provenance.insert(Stage::Semantic);
    acc.evidence.insert(h.node);
  }
  for (const auto& [node, seed] : expanded) {
    const auto f = defining_file(graph, node);
    if (!f) continue;
    auto& acc = files[*f];
    acc.offer(hit_score.at(seed));
    acc.provenance.insert(Stage::Traversal);
    acc.evidence.insert(node);
  }
  for (NodeId d : discovered) {
    auto& acc = files[d];
    acc.provenance.insert(Stage::Discovery);
    acc.evidence.insert(d);
  }

  std::vector<FileResult> ordered;
  ordered.reserve(files.size());
  for (auto& [id, acc] : files)
    ordered.push_back({id, graph.at(id).path, acc.score, 0, std::move(acc.provenance),
                       std::vector<NodeId>(acc.evidence.begin(), acc.evidence.end())});
  // Discovered files first (by path), then (score desc, semantic first, path).
  auto key = [](const FileResult& r) {
    if (r.provenance.count(Stage::Discovery)) return std::tuple(0, 0.0, 0);
    return std::tuple(1, -r.score.value_or(-2.0), r.provenance.count(Stage::Semantic) ? 0 : 1);
  };
  std::sort(ordered.begin(), ordered.end(), [&](const FileResult& a, const FileResult& b) {
    const auto ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    return a.path < b.path;
  });
  if (ordered.size() > request.k) ordered.resize(request.k);
  for (std::size_t i = 0; i < ordered.size(); ++i) ordered[i].rank = static_cast<int>(i + 1);
  resp.results = std::move(ordered);
  return resp;
}

}  // namespace repograph
