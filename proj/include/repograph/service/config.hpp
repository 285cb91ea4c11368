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

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"
#include "repograph/clustering/clustering.hpp"
#include "repograph/enrich/http_providers.hpp"
#include "repograph/retrieval/search.hpp"

namespace repograph {

// One out-of-process provider. An empty url selects the offline stub.
struct ProviderEndpoint {
  std::string url;
  std::string model;
  std::string api_key;
  int connect_timeout_ms = 5000;
  int read_timeout_ms = 60000;
  int retries = 2;

  bool configured() const { return !url.empty(); }
  HttpProviderOptions http_options() const;
};

struct SearchDefaults {
  PreprocessMode mode = PreprocessMode::None;
  std::size_t k = 50;
  std::optional<double> budget_fraction;
  TraversalConfig traversal;
  int depth = 1;  // subgraph and node-neighborhood expansion
};

struct ClusteringDefaults {
  ClusterMethod method = ClusterMethod::Louvain;
  std::uint64_t seed = 42;
  double resolution = 1.0;
  std::size_t misc_min_size = 3;
};

struct ServiceConfig {
  std::filesystem::path store_dir = "repograph-store";
  std::filesystem::path audit_log;  // empty = <store_dir>/audit.jsonl
  std::string host = "127.0.0.1";
  int port = 8080;
  int threads = 8;

  ProviderEndpoint summarizer;
  ProviderEndpoint embedder;
  ProviderEndpoint llm;
  int embedding_dim = 256;
  int enrich_max_in_flight = 4;

  SearchDefaults search;
  ClusteringDefaults clustering;

  std::filesystem::path audit_path() const;
  std::filesystem::path cache_path() const;  // enrichment cache
  std::filesystem::path clone_dir() const;   // bare clones of remote repositories

  // Throws ValidationError naming the first offending field.
  void validate() const;
  nlohmann::json to_json() const;
};

// Keys absent from `doc` keep their defaults. Unknown keys are rejected.
ServiceConfig config_from_json(const nlohmann::json& doc);
ServiceConfig load_config(const std::filesystem::path& file);

using EnvLookup = std::function<const char*(const char*)>;

// Overrides from the environment:
//   REPOGRAPH_STORE_DIR, REPOGRAPH_AUDIT_LOG,
//   REPOGRAPH_SUMMARIZE_URL, REPOGRAPH_EMBED_URL, REPOGRAPH_LLM_URL,
//   REPOGRAPH_PROVIDER_KEY, REPOGRAPH_PROVIDER_TIMEOUT_MS, REPOGRAPH_EMBED_DIM
void apply_env(ServiceConfig& config, const EnvLookup& lookup = [](const char* k) { return std::getenv(k); });

}  // namespace repograph
