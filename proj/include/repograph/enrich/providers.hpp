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

namespace repograph {

// What a summarizer sees for one node.
struct SummaryRequest {
  NodeKind kind = NodeKind::File;
  std::string name;
  std::string path;
  std::optional<std::string> docstring;
  std::string content;  // code, or the sorted child names of a folder
  std::string context;  // repository-level description

  // The filled-in summarization prompt.
  std::string prompt() const;
};

// Free-form completion, used by query preprocessing and file discovery.
struct CompletionRequest {
  std::string task;  // "preprocess_query", "discover_files" or "label_cluster"
  std::string prompt;
  std::string input;  // the raw user text
};

// Providers throw ProviderError on failure. Implementations must be safe to
// call from several threads at once.
class Summarizer {
 public:
  virtual ~Summarizer() = default;
  virtual std::string identity() const = 0;
  virtual std::string summarize(const SummaryRequest& request) const = 0;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string identity() const = 0;
  virtual int dim() const = 0;
  // One unit vector of dim() per input text, in order.
  virtual std::vector<Embedding> embed(const std::vector<std::string>& texts) const = 0;
};

class LanguageModel {
 public:
  virtual ~LanguageModel() = default;
  virtual std::string identity() const = 0;
  virtual std::string complete(const CompletionRequest& request) const = 0;
};

}  // namespace repograph
