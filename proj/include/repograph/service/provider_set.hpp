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

#include <memory>

#include "repograph/enrich/providers.hpp"
#include "repograph/retrieval/search.hpp"
#include "repograph/service/config.hpp"

namespace repograph {

// Providers selected by a ServiceConfig. The summarizer and embedder fall
// back to the stubs; the language model is absent unless configured.
struct ProviderSet {
  std::unique_ptr<Summarizer> summarizer;
  std::unique_ptr<Embedder> embedder;
  std::unique_ptr<LanguageModel> llm;

  SearchProviders search(bool use_llm = true) const { return {embedder.get(), use_llm ? llm.get() : nullptr}; }
};

ProviderSet make_providers(const ServiceConfig& config);

}  // namespace repograph
