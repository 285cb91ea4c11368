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

#include <optional>
#include <string>
#include <vector>

#include "repograph/core/types.hpp"
#include "repograph/enrich/providers.hpp"

namespace repograph {

enum class PreprocessMode { None, Llm, ConcatLlm, SelectiveLlm };
std::string_view to_string(PreprocessMode mode);
PreprocessMode parse_preprocess_mode(std::string_view name);

inline constexpr std::string_view kConcatSeparator = "\n---\n";

struct QueryBundle {
  std::string raw_text;
  std::optional<std::string> preprocessed_text;
  PreprocessMode requested = PreprocessMode::None;
  PreprocessMode effective = PreprocessMode::None;  // None after a provider failure
  std::vector<std::string> texts;                   // what was embedded, in order
  std::vector<Embedding> embeddings;                // one per text
  std::vector<std::string> warnings;
};

// Rewrites the query with the language model (shared instruction block,
// see prompts::preprocess_query_template) and embeds the resulting text(s):
//   None         -> [raw]
//   Llm          -> [preprocessed]
//   ConcatLlm    -> [preprocessed + "\n---\n" + raw]
//   SelectiveLlm -> [raw, preprocessed]
// A missing model, a provider error or an empty answer falls back to None
// with a warning. Embedding errors propagate.
QueryBundle preprocess_query(const std::string& query, PreprocessMode mode, const LanguageModel* llm,
                             const Embedder& embedder, const std::string& repo_context = {});

}  // namespace repograph
