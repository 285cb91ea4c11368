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

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>

#include "repograph/core/types.hpp"
#include "repograph/enrich/providers.hpp"

namespace repograph {

struct CacheEntry {
  std::string key;
  std::variant<std::string, Embedding> value;  // description or embedding
  Timestamp created_at;
};

// Content-addressed store for descriptions and embeddings. Keys are SHA-256
// over the provider input, the provider identity and the prompt version.
// Entries are immutable: a second put for a key is ignored. With a backing
// file, entries are appended as JSON lines and reloaded on construction;
// unreadable lines (e.g. a torn final write) are skipped and counted.
// Safe for concurrent use.
class EnrichCache {
 public:
  EnrichCache() = default;
  explicit EnrichCache(std::filesystem::path file);

  static std::string summary_key(const SummaryRequest& request, const std::string& summarizer);
  static std::string embedding_key(std::string_view text, const std::string& embedder);

  std::optional<std::string> description(const std::string& key) const;
  std::optional<Embedding> embedding(const std::string& key) const;
  void put(CacheEntry entry);

  std::size_t size() const;
  std::size_t skipped_lines() const { return skipped_lines_; }

 private:
  void append(const CacheEntry& entry);

  mutable std::mutex mu_;
  std::unordered_map<std::string, CacheEntry> entries_;
  std::optional<std::filesystem::path> file_;
  std::unique_ptr<std::ofstream> out_;
  std::size_t skipped_lines_ = 0;
};

}  // namespace repograph
