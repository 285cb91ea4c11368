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

#include <string>

#include "json.hpp"
#include "repograph/enrich/providers.hpp"

namespace repograph {

// Out-of-process providers speaking JSON over HTTP:
//   POST /v1/summarize {kind,name,path,docstring,content,context,prompt} -> {description}
//   POST /v1/embed     {texts:[...]}                                    -> {vectors:[[...]], dim}
//   POST /v1/complete  {task,prompt,input}                              -> {text}
struct HttpProviderOptions {
  std::string base_url;  // e.g. http://127.0.0.1:8700
  std::string model;     // recorded in the provider identity
  std::string api_key;   // sent as a bearer token when set
  int connect_timeout_ms = 5000;
  int read_timeout_ms = 60000;
  int retries = 2;  // extra attempts after the first
  int backoff_ms = 250;  // doubled after every failed attempt
};

// POSTs `body` to base_url + path, retrying transport errors, 429 and 5xx.
// Throws ProviderError once attempts are exhausted or on any other status.
nlohmann::json post_json(const HttpProviderOptions& options, const std::string& path, const nlohmann::json& body);

class HttpSummarizer final : public Summarizer {
 public:
  explicit HttpSummarizer(HttpProviderOptions options) : options_(std::move(options)) {}
  std::string identity() const override;
  std::string summarize(const SummaryRequest& request) const override;

 private:
  HttpProviderOptions options_;
};

class HttpEmbedder final : public Embedder {
 public:
  HttpEmbedder(HttpProviderOptions options, int dim) : options_(std::move(options)), dim_(dim) {}
  std::string identity() const override;
  int dim() const override { return dim_; }
  std::vector<Embedding> embed(const std::vector<std::string>& texts) const override;

 private:
  HttpProviderOptions options_;
  int dim_;
};

class HttpLanguageModel final : public LanguageModel {
 public:
  explicit HttpLanguageModel(HttpProviderOptions options) : options_(std::move(options)) {}
  std::string identity() const override;
  std::string complete(const CompletionRequest& request) const override;

 private:
  HttpProviderOptions options_;
};

}  // namespace repograph
