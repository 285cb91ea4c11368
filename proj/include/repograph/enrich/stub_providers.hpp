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

#include <cstdint>
#include <string>
#include <string_view>

#include "repograph/enrich/providers.hpp"

namespace repograph {

inline constexpr int kStubEmbeddingDim = 256;

// First sentence of the docstring, else "<Kind> <name> at <path>".
std::string stub_summarize(const SummaryRequest& request);

// Bag of hashed tokens: lower-cased alphanumeric runs are hashed (FNV-1a,
// seeded) into `dim` buckets holding term counts, then L2-normalized.
// Texts without tokens hash as one token. Empty text is rejected.
Embedding stub_embed(std::string_view text, int dim = kStubEmbeddingDim, std::uint64_t seed = 0);
std::vector<std::string> stub_tokens(std::string_view text);
std::size_t stub_bucket(std::string_view token, int dim, std::uint64_t seed = 0);

class StubSummarizer final : public Summarizer {
 public:
  std::string identity() const override { return "stub-summarizer/1"; }
  std::string summarize(const SummaryRequest& request) const override { return stub_summarize(request); }
};

class StubEmbedder final : public Embedder {
 public:
  explicit StubEmbedder(int dim = kStubEmbeddingDim, std::uint64_t seed = 0);
  std::string identity() const override;
  int dim() const override { return dim_; }
  std::vector<Embedding> embed(const std::vector<std::string>& texts) const override;

 private:
  int dim_;
  std::uint64_t seed_;
};

// Returns prefix + input; ignores the prompt.
class StubLanguageModel final : public LanguageModel {
 public:
  explicit StubLanguageModel(std::string prefix = "NORMALIZED:") : prefix_(std::move(prefix)) {}
  std::string identity() const override { return "stub-llm/1"; }
  std::string complete(const CompletionRequest& request) const override { return prefix_ + request.input; }

 private:
  std::string prefix_;
};

}  // namespace repograph
