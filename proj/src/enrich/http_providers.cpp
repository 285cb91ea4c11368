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

#include "repograph/enrich/http_providers.hpp"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "repograph/core/error.hpp"

namespace repograph {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path prefix without trailing slash
};

Endpoint split_url(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw ValidationError("provider URL needs a scheme: " + url);
  const std::size_t slash = url.find('/', scheme + 3);
  Endpoint e{url.substr(0, slash), slash == std::string::npos ? "" : url.substr(slash)};
  while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
  return e;
}

void set_timeout(httplib::Client& cli, int ms) {
  cli.set_connection_timeout(ms / 1000, (ms % 1000) * 1000);
}

std::string identity_of(const char* kind, const HttpProviderOptions& o) {
  return std::string("http-") + kind + "/1:" + o.base_url + (o.model.empty() ? "" : ":" + o.model);
}

}  // namespace

nlohmann::json post_json(const HttpProviderOptions& options, const std::string& path, const nlohmann::json& body) {
  const Endpoint ep = split_url(options.base_url);
  const std::string payload = body.dump();
  httplib::Headers headers;
  if (!options.api_key.empty()) headers.emplace("Authorization", "Bearer " + options.api_key);
  std::string last_error;
  int backoff = options.backoff_ms;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
    httplib::Client cli(ep.origin);
    set_timeout(cli, options.connect_timeout_ms);
    cli.set_read_timeout(options.read_timeout_ms / 1000, (options.read_timeout_ms % 1000) * 1000);
    cli.set_write_timeout(options.read_timeout_ms / 1000, (options.read_timeout_ms % 1000) * 1000);
    const auto res = cli.Post(ep.prefix + path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status < 200 || res->status >= 300)
      throw ProviderError(options.base_url + path + " returned HTTP " + std::to_string(res->status) + ": " +
                          res->body.substr(0, 200));
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(options.base_url + path + " returned invalid JSON: " + e.what());
    }
  }
  throw ProviderError(options.base_url + path + " failed after " + std::to_string(options.retries + 1) +
                      " attempts: " + last_error);
}

std::string HttpSummarizer::identity() const { return identity_of("summarizer", options_); }

std::string HttpSummarizer::summarize(const SummaryRequest& r) const {
  const nlohmann::json body = {{"kind", std::string(to_string(r.kind))},
                               {"name", r.name},
                               {"path", r.path},
                               {"docstring", r.docstring ? nlohmann::json(*r.docstring) : nlohmann::json(nullptr)},
                               {"content", r.content},
                               {"context", r.context},
                               {"prompt", r.prompt()}};
  const auto res = post_json(options_, "/v1/summarize", body);
  if (!res.is_object() || !res.contains("description") || !res["description"].is_string())
    throw ProviderError("summarize response lacks a 'description' string");
  std::string d = res["description"].get<std::string>();
  if (d.empty()) throw ProviderError("summarizer returned an empty description");
  return d;
}

std::string HttpEmbedder::identity() const {
  return identity_of("embedder", options_) + ":dim=" + std::to_string(dim_);
}

std::vector<Embedding> HttpEmbedder::embed(const std::vector<std::string>& texts) const {
  const auto res = post_json(options_, "/v1/embed", {{"texts", texts}});
  if (!res.is_object() || !res.contains("vectors") || !res["vectors"].is_array())
    throw ProviderError("embed response lacks a 'vectors' array");
  if (res.contains("dim") && (!res["dim"].is_number_integer() || res["dim"].get<int>() != dim_))
    throw DimensionError("embedder reported dim " + res["dim"].dump() + ", expected " + std::to_string(dim_));
  const auto& vecs = res["vectors"];
  if (vecs.size() != texts.size())
    throw ProviderError("embedder returned " + std::to_string(vecs.size()) + " vectors for " +
                        std::to_string(texts.size()) + " texts");
  std::vector<Embedding> out;
  out.reserve(vecs.size());
  for (const auto& v : vecs) {
    if (!v.is_array()) throw ProviderError("embedding is not an array");
    if (v.size() != static_cast<std::size_t>(dim_))
      throw DimensionError("embedder returned a vector of dim " + std::to_string(v.size()) + ", expected " +
                           std::to_string(dim_));
    std::vector<float> raw;
    raw.reserve(v.size());
    for (const auto& x : v) {
      if (!x.is_number()) throw ProviderError("embedding component is not a number");
      raw.push_back(x.get<float>());
    }
    try {
      out.push_back(Embedding::normalized(std::move(raw)));
    } catch (const DimensionError&) {
      throw ProviderError("embedder returned an all-zero vector");
    }
  }
  return out;
}

std::string HttpLanguageModel::identity() const { return identity_of("llm", options_); }

std::string HttpLanguageModel::complete(const CompletionRequest& r) const {
  const auto res = post_json(options_, "/v1/complete", {{"task", r.task}, {"prompt", r.prompt}, {"input", r.input}});
  if (!res.is_object() || !res.contains("text") || !res["text"].is_string())
    throw ProviderError("complete response lacks a 'text' string");
  return res["text"].get<std::string>();
}

}  // namespace repograph
