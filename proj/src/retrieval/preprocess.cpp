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

#include "repograph/retrieval/preprocess.hpp"

#include <algorithm>
#include <cctype>

#include "repograph/core/error.hpp"
#include "repograph/enrich/prompts.hpp"

namespace repograph {

std::string_view to_string(PreprocessMode m) {
  switch (m) {
    case PreprocessMode::None: return "None";
    case PreprocessMode::Llm: return "Llm";
    case PreprocessMode::ConcatLlm: return "ConcatLlm";
    case PreprocessMode::SelectiveLlm: return "SelectiveLlm";
  }
  return "None";
}

PreprocessMode parse_preprocess_mode(std::string_view name) {
  std::string n;
  for (char c : name)
    if (c != '_' && c != '-') n.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (n == "none") return PreprocessMode::None;
  if (n == "llm") return PreprocessMode::Llm;
  if (n == "concatllm" || n == "concat") return PreprocessMode::ConcatLlm;
  if (n == "selectivellm" || n == "selective") return PreprocessMode::SelectiveLlm;
  throw ValidationError("unknown preprocessing mode '" + std::string(name) +
                        "' (expected None, Llm, ConcatLlm or SelectiveLlm)");
}

namespace {

std::string trim(std::string s) {
  auto space = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), space));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), space).base(), s.end());
  return s;
}

}  // namespace

QueryBundle preprocess_query(const std::string& query, PreprocessMode mode, const LanguageModel* llm,
                             const Embedder& embedder, const std::string& repo_context) {
  if (trim(query).empty()) throw ValidationError("query must not be empty");
  QueryBundle b;
  b.raw_text = query;
  b.requested = mode;
  b.effective = mode;
  if (mode != PreprocessMode::None) {
    if (!llm) {
      b.warnings.push_back("no language model configured; using the raw query");
      b.effective = PreprocessMode::None;
    } else {
      try {
        const std::string prompt =
            prompts::render(prompts::preprocess_query_template(), {{"query", query}, {"context", repo_context}});
        std::string out = trim(llm->complete({"preprocess_query", prompt, query}));
        if (out.empty()) throw ProviderError("language model returned an empty rewrite");
        b.preprocessed_text = std::move(out);
      } catch (const std::exception& e) {
        b.warnings.push_back(std::string("query preprocessing failed, using the raw query: ") + e.what());
        b.effective = PreprocessMode::None;
      }
    }
  }
  switch (b.effective) {
    case PreprocessMode::None: b.texts = {b.raw_text}; break;
    case PreprocessMode::Llm: b.texts = {*b.preprocessed_text}; break;
    case PreprocessMode::ConcatLlm: b.texts = {*b.preprocessed_text + std::string(kConcatSeparator) + b.raw_text}; break;
    case PreprocessMode::SelectiveLlm: b.texts = {b.raw_text, *b.preprocessed_text}; break;
  }
  b.embeddings = embedder.embed(b.texts);
  if (b.embeddings.size() != b.texts.size()) throw ProviderError("embedder returned the wrong number of vectors");
  return b;
}

}  // namespace repograph
