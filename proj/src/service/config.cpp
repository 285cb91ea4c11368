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

#include "repograph/service/config.hpp"

#include <fstream>
#include <set>

#include "repograph/core/error.hpp"
#include "repograph/service/operations.hpp"

namespace repograph {

namespace fs = std::filesystem;
using nlohmann::json;

HttpProviderOptions ProviderEndpoint::http_options() const {
  HttpProviderOptions o;
  o.base_url = url;
  o.model = model;
  o.api_key = api_key;
  o.connect_timeout_ms = connect_timeout_ms;
  o.read_timeout_ms = read_timeout_ms;
  o.retries = retries;
  return o;
}

fs::path ServiceConfig::audit_path() const { return audit_log.empty() ? store_dir / "audit.jsonl" : audit_log; }
fs::path ServiceConfig::cache_path() const { return store_dir / "enrich-cache.jsonl"; }
fs::path ServiceConfig::clone_dir() const { return store_dir / "clones"; }

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw ValidationError("config: '" + field + "' " + why);
}

void check_endpoint(const ProviderEndpoint& e, const std::string& name) {
  if (e.configured() && e.url.find("://") == std::string::npos) bad(name + ".url", "needs a scheme");
  if (e.connect_timeout_ms <= 0) bad(name + ".connect_timeout_ms", "must be positive");
  if (e.read_timeout_ms <= 0) bad(name + ".read_timeout_ms", "must be positive");
  if (e.retries < 0) bad(name + ".retries", "must be >= 0");
}

json endpoint_json(const ProviderEndpoint& e) {
  return {{"url", e.url},
          {"model", e.model},
          {"api_key", e.api_key.empty() ? "" : "***"},
          {"connect_timeout_ms", e.connect_timeout_ms},
          {"read_timeout_ms", e.read_timeout_ms},
          {"retries", e.retries}};
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) bad(where, "must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) bad(where.empty() ? k : where + "." + k, "is not a known setting");
}

template <typename T>
void take(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(where + key, "has the wrong type");
  }
}

ProviderEndpoint endpoint_from(const json& j, const std::string& name) {
  check_keys(j, name, {"url", "model", "api_key", "connect_timeout_ms", "read_timeout_ms", "retries"});
  ProviderEndpoint e;
  const std::string p = name + ".";
  take(j, "url", e.url, p);
  take(j, "model", e.model, p);
  take(j, "api_key", e.api_key, p);
  take(j, "connect_timeout_ms", e.connect_timeout_ms, p);
  take(j, "read_timeout_ms", e.read_timeout_ms, p);
  take(j, "retries", e.retries, p);
  return e;
}

json traversal_json(const TraversalConfig& t) {
  if (t.mode == TraversalConfig::Mode::Default) return "default";
  if (t.mode == TraversalConfig::Mode::Off) return "off";
  json kinds = json::array();
  for (EdgeKind k : t.spec.edge_kinds) kinds.push_back(std::string(to_string(k)));
  json nkinds = json::array();
  for (NodeKind k : t.spec.allowed_kinds) nkinds.push_back(std::string(to_string(k)));
  return {{"edge_kinds", kinds},
          {"node_kinds", nkinds},
          {"direction", std::string(to_string(t.spec.direction))},
          {"depth", t.spec.depth}};
}

}  // namespace

void ServiceConfig::validate() const {
  if (store_dir.empty()) bad("store_dir", "must not be empty");
  if (port < 0 || port > 65535) bad("port", "must be in [0, 65535]");
  if (threads < 1) bad("threads", "must be >= 1");
  check_endpoint(summarizer, "providers.summarizer");
  check_endpoint(embedder, "providers.embedder");
  check_endpoint(llm, "providers.llm");
  if (embedding_dim < 1) bad("providers.embedding_dim", "must be >= 1");
  if (enrich_max_in_flight < 1) bad("providers.max_in_flight", "must be >= 1");
  RetrievalRequest probe;
  probe.query_text = "probe";
  probe.mode = search.mode;
  probe.k = search.k;
  probe.budget_fraction = search.budget_fraction;
  probe.traversal = search.traversal;
  try {
    probe.validate();
  } catch (const ValidationError& e) {
    bad("search", e.what());
  }
  if (search.depth < 1) bad("search.depth", "must be >= 1");
  if (!(clustering.resolution > 0.0)) bad("clustering.resolution", "must be positive");
}

json ServiceConfig::to_json() const {
  json budget = search.budget_fraction ? json(*search.budget_fraction) : json(nullptr);
  return {{"store_dir", store_dir.string()},
          {"audit_log", audit_path().string()},
          {"host", host},
          {"port", port},
          {"threads", threads},
          {"providers",
           {{"summarizer", endpoint_json(summarizer)},
            {"embedder", endpoint_json(embedder)},
            {"llm", endpoint_json(llm)},
            {"embedding_dim", embedding_dim},
            {"max_in_flight", enrich_max_in_flight}}},
          {"search",
           {{"mode", std::string(to_string(search.mode))},
            {"k", search.k},
            {"budget_fraction", budget},
            {"traversal", traversal_json(search.traversal)},
            {"depth", search.depth}}},
          {"clustering",
           {{"method", to_string(clustering.method)},
            {"seed", clustering.seed},
            {"resolution", clustering.resolution},
            {"misc_min_size", clustering.misc_min_size}}}};
}

ServiceConfig config_from_json(const json& doc) {
  ServiceConfig c;
  check_keys(doc, "", {"store_dir", "audit_log", "host", "port", "threads", "providers", "search", "clustering"});
  std::string s;
  if (doc.contains("store_dir")) {
    take(doc, "store_dir", s, "");
    c.store_dir = s;
  }
  if (doc.contains("audit_log")) {
    take(doc, "audit_log", s, "");
    c.audit_log = s;
  }
  take(doc, "host", c.host, "");
  take(doc, "port", c.port, "");
  take(doc, "threads", c.threads, "");
  if (doc.contains("providers")) {
    const json& p = doc["providers"];
    check_keys(p, "providers", {"summarizer", "embedder", "llm", "embedding_dim", "max_in_flight"});
    if (p.contains("summarizer")) c.summarizer = endpoint_from(p["summarizer"], "providers.summarizer");
    if (p.contains("embedder")) c.embedder = endpoint_from(p["embedder"], "providers.embedder");
    if (p.contains("llm")) c.llm = endpoint_from(p["llm"], "providers.llm");
    take(p, "embedding_dim", c.embedding_dim, "providers.");
    take(p, "max_in_flight", c.enrich_max_in_flight, "providers.");
  }
  if (doc.contains("search")) {
    const json& q = doc["search"];
    check_keys(q, "search", {"mode", "k", "budget_fraction", "traversal", "depth"});
    try {
      if (q.contains("mode")) c.search.mode = parse_preprocess_mode(q["mode"].get<std::string>());
      if (q.contains("traversal")) c.search.traversal = parse_traversal(q["traversal"]);
    } catch (const json::exception& e) {
      bad("search", e.what());
    } catch (const ParseError& e) {
      bad("search", e.what());
    }
    take(q, "k", c.search.k, "search.");
    if (q.contains("budget_fraction") && !q["budget_fraction"].is_null()) {
      double b = 0;
      take(q, "budget_fraction", b, "search.");
      c.search.budget_fraction = b;
    }
    take(q, "depth", c.search.depth, "search.");
  }
  if (doc.contains("clustering")) {
    const json& q = doc["clustering"];
    check_keys(q, "clustering", {"method", "seed", "resolution", "misc_min_size"});
    if (q.contains("method")) {
      take(q, "method", s, "clustering.");
      try {
        c.clustering.method = parse_cluster_method(s);
      } catch (const ParseError& e) {
        bad("clustering.method", e.what());
      }
    }
    take(q, "seed", c.clustering.seed, "clustering.");
    take(q, "resolution", c.clustering.resolution, "clustering.");
    take(q, "misc_min_size", c.clustering.misc_min_size, "clustering.");
  }
  c.validate();
  return c;
}

ServiceConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw NotFoundError("cannot open config " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(e.what(), file.string());
  }
  return config_from_json(doc);
}

void apply_env(ServiceConfig& c, const EnvLookup& lookup) {
  auto get = [&](const char* key) -> std::optional<std::string> {
    const char* v = lookup(key);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
  };
  auto to_int = [&](const char* key, const std::string& v) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return n;
    } catch (const std::exception&) {
      throw ValidationError(std::string("environment: ") + key + " is not an integer: " + v);
    }
  };
  if (auto v = get("REPOGRAPH_STORE_DIR")) c.store_dir = *v;
  if (auto v = get("REPOGRAPH_AUDIT_LOG")) c.audit_log = *v;
  if (auto v = get("REPOGRAPH_SUMMARIZE_URL")) c.summarizer.url = *v;
  if (auto v = get("REPOGRAPH_EMBED_URL")) c.embedder.url = *v;
  if (auto v = get("REPOGRAPH_LLM_URL")) c.llm.url = *v;
  if (auto v = get("REPOGRAPH_PROVIDER_KEY")) {
    for (ProviderEndpoint* e : {&c.summarizer, &c.embedder, &c.llm}) e->api_key = *v;
  }
  if (auto v = get("REPOGRAPH_PROVIDER_TIMEOUT_MS")) {
    const int ms = to_int("REPOGRAPH_PROVIDER_TIMEOUT_MS", *v);
    for (ProviderEndpoint* e : {&c.summarizer, &c.embedder, &c.llm}) e->read_timeout_ms = ms;
  }
  if (auto v = get("REPOGRAPH_EMBED_DIM")) c.embedding_dim = to_int("REPOGRAPH_EMBED_DIM", *v);
  c.validate();
}

}  // namespace repograph
