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

#include "repograph/enrich/enrich.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <thread>

#include "repograph/core/error.hpp"
#include "repograph/enrich/prompts.hpp"

namespace repograph {

EnrichScope parse_enrich_scope(std::string_view name) {
  if (name == "all") return EnrichScope::All;
  if (name == "stale-only" || name == "stale") return EnrichScope::StaleOnly;
  throw ValidationError("unknown enrich scope '" + std::string(name) + "' (expected all or stale-only)");
}

nlohmann::json EnrichReport::to_json() const {
  nlohmann::json f = nlohmann::json::array();
  for (const auto& x : failures) f.push_back({{"node", x.node.str()}, {"path", x.path}, {"error", x.error}});
  return {{"nodes_in_scope", nodes_in_scope}, {"nodes_enriched", nodes_enriched},
          {"summarize_calls", summarize_calls}, {"embed_calls", embed_calls},
          {"texts_embedded", texts_embedded}, {"cache_hits", cache_hits},
          {"failures", f}, {"warnings", warnings}};
}

bool is_enrichable(NodeKind k) { return k != NodeKind::Root; }

bool has_code_embedding(NodeKind k) { return k != NodeKind::Root && k != NodeKind::Folder; }

namespace {

std::string clip(const std::string& s, std::size_t max) { return s.size() <= max ? s : s.substr(0, max); }

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::optional<std::string> code_text(const Node& n, std::size_t max) {
  if (!has_code_embedding(n.kind) || !n.raw_content || blank(*n.raw_content)) return std::nullopt;
  return clip(*n.raw_content, max);
}

struct Outcome {
  std::string description;
  std::optional<Embedding> description_embedding;
  std::optional<Embedding> code_embedding;
  std::optional<std::string> error;
};

}  // namespace

SummaryRequest summary_request(const KnowledgeGraph& g, NodeId id, std::size_t max_content_chars) {
  const Node& n = g.at(id);
  SummaryRequest r;
  r.kind = n.kind;
  r.name = n.name;
  r.path = n.path;
  r.docstring = n.docstring;
  if (n.kind == NodeKind::Folder) {
    std::vector<std::string> children;
    for (const Edge& e : g.out_edges(id))
      if (e.kind == EdgeKind::Contains) children.push_back(g.at(e.dst).name);
    std::sort(children.begin(), children.end());
    for (const auto& c : children) r.content += c + "\n";
  } else if (n.raw_content) {
    r.content = clip(*n.raw_content, max_content_chars);
  }
  if (const auto root = g.root()) r.context = g.at(*root).description.value_or(g.at(*root).name);
  return r;
}

std::string provider_fingerprint(const Summarizer& s, const Embedder& e) {
  return s.identity() + "|" + e.identity() + "|prompts:" + prompts::version();
}

EnrichReport enrich_graph(KnowledgeGraph& graph, const Summarizer& summarizer, const Embedder& embedder,
                          EnrichCache& cache, const EnrichOptions& options) {
  const int dim = embedder.dim();
  if (graph.meta().embedding_dim != 0 && graph.meta().embedding_dim != dim)
    throw DimensionError("embedder dim " + std::to_string(dim) + " does not match graph embedding_dim " +
                         std::to_string(graph.meta().embedding_dim));

  EnrichReport report;
  const std::string fingerprint = provider_fingerprint(summarizer, embedder);
  if (options.scope == EnrichScope::StaleOnly && !graph.meta().provider_fingerprint.empty() &&
      graph.meta().provider_fingerprint != fingerprint)
    report.warnings.push_back("providers changed since the last run (" + graph.meta().provider_fingerprint +
                              "); unchanged nodes keep their old enrichment");

  std::vector<NodeId> todo;
  for (NodeId id : graph.node_ids_sorted()) {
    const Node& n = graph.at(id);
    if (!is_enrichable(n.kind)) continue;
    const bool incomplete = !n.description || !n.description_embedding ||
                            (code_text(n, options.max_content_chars) && !n.code_embedding);
    if (options.scope == EnrichScope::All || n.stale || n.enrichment_failed || incomplete) todo.push_back(id);
  }
  report.nodes_in_scope = todo.size();

  const std::string summarizer_id = summarizer.identity();
  const std::string embedder_id = embedder.identity();
  std::vector<Outcome> outcomes(todo.size());
  std::atomic<std::size_t> next{0}, summarize_calls{0}, embed_calls{0}, texts{0}, hits{0};
  std::atomic<bool> abort{false};
  std::exception_ptr hard_error;
  std::mutex error_mu;

  auto process = [&](std::size_t i) {
    Outcome& out = outcomes[i];
    const Node& n = graph.at(todo[i]);
    const SummaryRequest req = summary_request(graph, todo[i], options.max_content_chars);
    const std::string skey = EnrichCache::summary_key(req, summarizer_id);
    if (auto d = cache.description(skey)) {
      ++hits;
      out.description = std::move(*d);
    } else {
      ++summarize_calls;
      out.description = summarizer.summarize(req);
      if (out.description.empty()) throw ProviderError("summarizer returned an empty description");
      cache.put({skey, out.description, Timestamp::now()});
    }

    std::vector<std::string> inputs{out.description};
    if (auto code = code_text(n, options.max_content_chars)) inputs.push_back(std::move(*code));
    std::vector<std::optional<Embedding>> vecs(inputs.size());
    std::vector<std::string> keys;
    std::vector<std::string> pending;
    std::vector<std::size_t> pending_at;
    for (std::size_t t = 0; t < inputs.size(); ++t) {
      keys.push_back(EnrichCache::embedding_key(inputs[t], embedder_id));
      if (auto e = cache.embedding(keys[t])) {
        ++hits;
        vecs[t] = std::move(*e);
      } else {
        pending.push_back(inputs[t]);
        pending_at.push_back(t);
      }
    }
    if (!pending.empty()) {
      ++embed_calls;
      texts += pending.size();
      auto got = embedder.embed(pending);
      if (got.size() != pending.size()) throw ProviderError("embedder returned the wrong number of vectors");
      for (std::size_t p = 0; p < got.size(); ++p) {
        if (static_cast<int>(got[p].dim()) != dim)
          throw DimensionError("embedder returned dim " + std::to_string(got[p].dim()) + ", declared " +
                               std::to_string(dim));
        cache.put({keys[pending_at[p]], got[p], Timestamp::now()});
        vecs[pending_at[p]] = std::move(got[p]);
      }
    }
    out.description_embedding = std::move(vecs[0]);
    if (vecs.size() > 1) out.code_embedding = std::move(vecs[1]);
  };

  auto worker = [&] {
    while (!abort) {
      const std::size_t i = next++;
      if (i >= todo.size()) return;
      try {
        process(i);
      } catch (const DimensionError&) {
        std::lock_guard lock(error_mu);
        if (!hard_error) hard_error = std::current_exception();
        abort = true;
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };

  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options.max_in_flight)), todo.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (hard_error) std::rethrow_exception(hard_error);

  if (graph.meta().embedding_dim == 0) graph.set_embedding_dim(dim);
  for (std::size_t i = 0; i < todo.size(); ++i) {
    Outcome& o = outcomes[i];
    if (o.error) {
      report.failures.push_back({todo[i], graph.at(todo[i]).path, *o.error});
      graph.modify_node(todo[i], [](Node& n) { n.enrichment_failed = true; });
      continue;
    }
    graph.modify_node(todo[i], [&](Node& n) {
      n.description = std::move(o.description);
      n.description_embedding = std::move(o.description_embedding);
      n.code_embedding = std::move(o.code_embedding);
      n.stale = false;
      n.enrichment_failed = false;
    });
    ++report.nodes_enriched;
  }
  report.summarize_calls = summarize_calls;
  report.embed_calls = embed_calls;
  report.texts_embedded = texts;
  report.cache_hits = hits;
  graph.meta().provider_fingerprint = fingerprint;
  if (!todo.empty()) graph.meta().updated_at = Timestamp::now();
  return report;
}

}  // namespace repograph
