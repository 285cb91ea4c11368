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

#include "repograph/service/operations.hpp"

#include <set>

#include "repograph/core/error.hpp"
#include "repograph/core/snapshot.hpp"
#include "repograph/enrich/enrich.hpp"
#include "repograph/ingest/builder.hpp"
#include "repograph/ingest/update.hpp"
#include "repograph/service/graph_store.hpp"

namespace repograph {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& why) { throw ValidationError("invalid request: " + why); }

void only_keys(const json& body, const std::set<std::string>& allowed) {
  if (!body.is_object()) invalid("body must be a JSON object");
  for (const auto& [k, v] : body.items())
    if (!allowed.count(k)) invalid("unknown field '" + k + "'");
}

std::string string_field(const json& body, const char* key, bool required) {
  if (!body.contains(key)) {
    if (required) invalid(std::string("missing field '") + key + "'");
    return {};
  }
  if (!body[key].is_string()) invalid(std::string("'") + key + "' must be a string");
  return body[key].get<std::string>();
}

bool bool_field(const json& body, const char* key, bool fallback) {
  if (!body.contains(key)) return fallback;
  if (!body[key].is_boolean()) invalid(std::string("'") + key + "' must be a boolean");
  return body[key].get<bool>();
}

json string_array(const json& j, const char* what) {
  if (!j.is_array()) invalid(std::string("'") + what + "' must be an array of strings");
  for (const auto& v : j)
    if (!v.is_string()) invalid(std::string("'") + what + "' must be an array of strings");
  return j;
}

json update_report_json(const UpdateReport& r, const ChangeSet& cs) {
  return {{"changes", cs.to_json()},
          {"files_added", r.files_added},
          {"files_changed", r.files_changed},
          {"files_removed", r.files_removed},
          {"nodes_marked_stale", r.nodes_marked_stale}};
}

json labelled(const std::string& text) { return {{"text", text}, {"source", kLlmSuggested}}; }

}  // namespace

BuildRequest BuildRequest::from_json(const json& body) {
  only_keys(body, {"repo", "revision", "branch", "graph_id", "enrich", "async"});
  BuildRequest r;
  r.repo.url_or_path = string_field(body, "repo", true);
  if (r.repo.url_or_path.empty()) invalid("'repo' must not be empty");
  r.repo.revision = string_field(body, "revision", false);
  if (body.contains("branch")) r.repo.branch = string_field(body, "branch", true);
  if (body.contains("graph_id")) {
    r.graph_id = string_field(body, "graph_id", true);
    GraphStore::check_id(*r.graph_id);
  }
  r.enrich = bool_field(body, "enrich", true);
  r.async = bool_field(body, "async", true);
  return r;
}

UpdateRequest UpdateRequest::from_json(const json& body) {
  only_keys(body, {"old_revision", "new_revision", "repo", "enrich", "async"});
  UpdateRequest r;
  r.old_revision = string_field(body, "old_revision", true);
  r.new_revision = string_field(body, "new_revision", true);
  if (r.old_revision.empty() || r.new_revision.empty()) invalid("revisions must not be empty");
  r.repo = string_field(body, "repo", false);
  r.enrich = bool_field(body, "enrich", true);
  r.async = bool_field(body, "async", false);
  return r;
}

TraversalConfig parse_traversal(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "default") return TraversalConfig{};
    if (s == "off") return TraversalConfig::off();
    invalid("traversal must be \"default\", \"off\" or an object");
  }
  only_keys(j, {"edge_kinds", "node_kinds", "direction", "depth"});
  TraversalSpec spec;
  try {
    if (j.contains("edge_kinds"))
      for (const auto& k : string_array(j["edge_kinds"], "traversal.edge_kinds"))
        spec.edge_kinds.insert(parse_edge_kind(k.get<std::string>()));
    if (j.contains("node_kinds"))
      for (const auto& k : string_array(j["node_kinds"], "traversal.node_kinds"))
        spec.allowed_kinds.insert(parse_node_kind(k.get<std::string>()));
  } catch (const ParseError& e) {
    invalid(e.what());
  }
  if (j.contains("direction")) spec.direction = parse_direction(string_field(j, "direction", true));
  if (j.contains("depth")) {
    if (!j["depth"].is_number_integer()) invalid("'traversal.depth' must be an integer");
    spec.depth = j["depth"].get<int>();
  }
  if (spec.depth < 1) invalid("'traversal.depth' must be >= 1");
  return TraversalConfig::custom(std::move(spec));
}

SearchRequest parse_search_request(const json& body, const SearchDefaults& defaults) {
  only_keys(body, {"query", "mode", "k", "budget_fraction", "traversal", "enable_discovery", "node_kinds", "fusion",
                   "use_llm"});
  SearchRequest s;
  RetrievalRequest& r = s.retrieval;
  r.query_text = string_field(body, "query", true);
  r.mode = body.contains("mode") ? parse_preprocess_mode(string_field(body, "mode", true)) : defaults.mode;
  r.k = defaults.k;
  if (body.contains("k")) {
    if (!body["k"].is_number_integer() || body["k"].get<long long>() < 1) invalid("'k' must be a positive integer");
    r.k = body["k"].get<std::size_t>();
  }
  r.budget_fraction = defaults.budget_fraction;
  if (body.contains("budget_fraction")) {
    if (body["budget_fraction"].is_null())
      r.budget_fraction.reset();
    else if (body["budget_fraction"].is_number())
      r.budget_fraction = body["budget_fraction"].get<double>();
    else
      invalid("'budget_fraction' must be a number or null");
  }
  r.traversal = body.contains("traversal") ? parse_traversal(body["traversal"]) : defaults.traversal;
  r.enable_discovery = bool_field(body, "enable_discovery", true);
  if (body.contains("node_kinds")) {
    try {
      for (const auto& k : string_array(body["node_kinds"], "node_kinds"))
        r.semantic.node_kinds.insert(parse_node_kind(k.get<std::string>()));
    } catch (const ParseError& e) {
      invalid(e.what());
    }
  }
  if (body.contains("fusion")) {
    const std::string f = string_field(body, "fusion", true);
    if (f == "per_node_max")
      r.semantic.fusion = FusionPolicy::PerNodeMax;
    else if (f == "query_winner")
      r.semantic.fusion = FusionPolicy::QueryWinner;
    else
      invalid("'fusion' must be per_node_max or query_winner");
  }
  s.use_llm = bool_field(body, "use_llm", true);
  r.validate();
  return s;
}

std::string repository_location(const KnowledgeGraph& graph) {
  const std::string& url = graph.meta().repo_url;
  constexpr std::string_view kFile = "file://";
  if (url.compare(0, kFile.size(), kFile) == 0) return url.substr(kFile.size());
  return url;
}

json enrich_repository(KnowledgeGraph& graph, const ProviderSet& providers, EnrichCache& cache, EnrichScope scope,
                       int max_in_flight) {
  EnrichOptions opts;
  opts.scope = scope;
  opts.max_in_flight = max_in_flight;
  return enrich_graph(graph, *providers.summarizer, *providers.embedder, cache, opts).to_json();
}

KnowledgeGraph build_repository(const BuildRequest& request, const ServiceConfig& config,
                                const ProviderSet& providers, EnrichCache& cache, json* report) {
  const auto source = open_repo(request.repo, config.clone_dir());
  IngestDiagnostics diagnostics;
  KnowledgeGraph g = build_graph(*source, AdapterRegistry::with_defaults(), {}, &diagnostics);
  if (request.graph_id) g.meta().graph_id = *request.graph_id;
  json r = {{"graph_id", g.meta().graph_id},
            {"repo_url", g.meta().repo_url},
            {"revision", g.meta().revision},
            {"diagnostics", diagnostics.to_json()}};
  if (request.enrich)
    r["enrichment"] = enrich_repository(g, providers, cache, EnrichScope::All, config.enrich_max_in_flight);
  r["stats"] = to_json(stats(g));
  if (report) *report = std::move(r);
  return g;
}

json update_repository(KnowledgeGraph& graph, const UpdateRequest& request, const ServiceConfig& config,
                       const ProviderSet& providers, EnrichCache& cache) {
  RepoRef ref;
  ref.url_or_path = request.repo.empty() ? repository_location(graph) : request.repo;
  ref.revision = request.new_revision;
  const auto source = open_repo(ref, config.clone_dir());
  const auto* git = dynamic_cast<const GitRepoSource*>(source.get());
  if (!git) throw ValidationError("updates need a git repository: " + ref.url_or_path);
  const std::string old_full = resolve_revision(git->dir(), request.old_revision);
  if (old_full != graph.meta().revision)
    throw RevisionError("graph '" + graph.meta().graph_id + "' is at revision " + graph.meta().revision +
                        ", not " + old_full);
  const ChangeSet changes = diff_revisions(*git, old_full, request.new_revision);
  IngestDiagnostics diagnostics;
  const UpdateReport rep = update_graph(graph, changes, *git, AdapterRegistry::with_defaults(), {}, &diagnostics);
  json r = update_report_json(rep, changes);
  r["graph_id"] = graph.meta().graph_id;
  r["revision"] = graph.meta().revision;
  r["diagnostics"] = diagnostics.to_json();
  if (request.enrich)
    r["enrichment"] = enrich_repository(graph, providers, cache, EnrichScope::StaleOnly, config.enrich_max_in_flight);
  return r;
}

std::string snippet_of(const Node& node, std::size_t max_lines, std::size_t max_chars) {
  if (!node.raw_content) return {};
  const std::string& s = *node.raw_content;
  std::size_t end = 0;
  for (std::size_t lines = 0; end < s.size() && lines < max_lines; ++lines) {
    const std::size_t nl = s.find('\n', end);
    end = nl == std::string::npos ? s.size() : nl + 1;
  }
  return s.substr(0, std::min(end, max_chars));
}

json search_response_json(const KnowledgeGraph& graph, const SearchResponse& response) {
  json j = response.to_json(graph);
  j["graph_id"] = graph.meta().graph_id;
  j["revision"] = graph.meta().revision;
  for (auto& result : j["results"]) {
    for (auto& ev : result["evidence_nodes"]) {
      const auto id = NodeId::parse(ev["id"].get<std::string>());
      const Node* n = id ? graph.find(*id) : nullptr;
      if (!n) continue;
      if (n->line_span) ev["line_span"] = {n->line_span->start, n->line_span->end};
      ev["snippet"] = snippet_of(*n);
      if (n->description) ev["description"] = labelled(*n->description);
    }
  }
  json& q = j["query"];
  if (q.contains("preprocessed_text")) {
    q["preprocessed"] = labelled(q["preprocessed_text"].get<std::string>());
    q.erase("preprocessed_text");
  }
  return j;
}

json node_detail_json(const KnowledgeGraph& graph, NodeId id) {
  const Node& n = graph.at(id);
  json j = node_summary_json(n);
  if (n.language) j["language"] = *n.language;
  if (n.size_bytes) j["size_bytes"] = *n.size_bytes;
  if (n.signature) j["signature"] = *n.signature;
  if (n.docstring) j["docstring"] = *n.docstring;
  j["description"] = n.description ? labelled(*n.description) : json(nullptr);
  j["has_description_embedding"] = n.description_embedding.has_value();
  j["has_code_embedding"] = n.code_embedding.has_value();
  j["stale"] = n.stale;
  j["enrichment_failed"] = n.enrichment_failed;
  j["parse_failed"] = n.parse_failed;
  j["last_modified"] = n.last_modified.iso();
  j["snippet"] = snippet_of(n);
  auto edge_list = [&](const std::vector<Edge>& edges, bool outgoing) {
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    json out = json::array();
    for (const Edge& e : sorted) {
      const Node& other = graph.at(outgoing ? e.dst : e.src);
      out.push_back({{"kind", std::string(to_string(e.kind))}, {"node", node_summary_json(other)}});
    }
    return out;
  };
  j["out_edges"] = edge_list(graph.out_edges(id), true);
  j["in_edges"] = edge_list(graph.in_edges(id), false);
  return j;
}

ReadResult file_subgraph(const KnowledgeGraph& graph, const std::vector<std::string>& paths, int depth) {
  if (paths.empty()) throw ValidationError("at least one file path is required");
  if (depth < 0) throw ValidationError("depth must be >= 0");
  std::set<NodeId> seeds;
  for (const std::string& p : paths) seeds.insert(read_query(graph, query::NodeByPath{p}).nodes.front());
  std::set<NodeId> members = seeds;
  if (depth > 0) {
    TraversalSpec spec;
    spec.depth = depth;
    const ReadResult around = read_query(graph, query::Neighbors{seeds, spec});
    members.insert(around.nodes.begin(), around.nodes.end());
  }
  return read_query(graph, query::SubgraphExtract{members});
}

json stats_json(const KnowledgeGraph& graph) {
  const auto& m = graph.meta();
  return {{"graph_id", m.graph_id},
          {"repo_url", m.repo_url},
          {"revision", m.revision},
          {"embedding_dim", m.embedding_dim},
          {"created_at", m.created_at.iso()},
          {"updated_at", m.updated_at.iso()},
          {"provider_fingerprint", m.provider_fingerprint},
          {"content_hash", content_hash(graph)},
          {"stats", to_json(stats(graph))}};
}

json cluster_response_json(const KnowledgeGraph& graph, const ClusterResult& result, bool llm_labels) {
  json j = result.to_json(graph);
  j["graph_id"] = graph.meta().graph_id;
  j["label_source"] = llm_labels ? kLlmSuggested : "heuristic";
  return j;
}

ClusterOptions cluster_options(const ClusteringDefaults& defaults, const LanguageModel* labeler) {
  ClusterOptions o;
  o.method = defaults.method;
  o.seed = defaults.seed;
  o.resolution = defaults.resolution;
  o.misc_min_size = defaults.misc_min_size;
  o.labeler = labeler;
  return o;
}

}  // namespace repograph
