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

#include "repograph/service/provider_set.hpp"

#include "repograph/enrich/http_providers.hpp"
#include "repograph/enrich/stub_providers.hpp"

namespace repograph {

ProviderSet make_providers(const ServiceConfig& config) {
  ProviderSet p;
  if (config.summarizer.configured())
    p.summarizer = std::make_unique<HttpSummarizer>(config.summarizer.http_options());
  else
    p.summarizer = std::make_unique<StubSummarizer>();
  if (config.embedder.configured())
    p.embedder = std::make_unique<HttpEmbedder>(config.embedder.http_options(), config.embedding_dim);
  else
    p.embedder = std::make_unique<StubEmbedder>(config.embedding_dim);
  if (config.llm.configured()) p.llm = std::make_unique<HttpLanguageModel>(config.llm.http_options());
  return p;
}

}  // namespace repograph
