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

#include "repograph/enrich/cache.hpp"

#include <fstream>

#include "repograph/core/digest.hpp"
#include "repograph/core/error.hpp"
#include "repograph/core/snapshot.hpp"
#include "repograph/enrich/prompts.hpp"

namespace repograph {

using nlohmann::json;

EnrichCache::EnrichCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(*file_);
  if (!in) return;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      CacheEntry e;
      e.key = j.at("key").get<std::string>();
      e.created_at = Timestamp::parse_iso(j.at("created_at").get<std::string>());
      const std::string type = j.at("type").get<std::string>();
      if (type == "description") e.value = j.at("value").get<std::string>();
      else if (type == "embedding") e.value = decode_embedding(j.at("value"), true, "line " + std::to_string(n));
      else throw ValidationError("unknown entry type " + type);
      entries_.emplace(e.key, std::move(e));
    } catch (const std::exception&) {
      ++skipped_lines_;
    }
  }
}

std::string EnrichCache::summary_key(const SummaryRequest& r, const std::string& summarizer) {
  FieldHasher h;
  h.add("summary").add(prompts::version()).add(summarizer);
  h.add(to_string(r.kind)).add(r.name).add(r.path);
  h.add(static_cast<std::uint64_t>(r.docstring.has_value())).add(r.docstring.value_or(""));
  h.add(r.content).add(r.context);
  return h.finish_hex();
}

std::string EnrichCache::embedding_key(std::string_view text, const std::string& embedder) {
  FieldHasher h;
  h.add("embedding").add(prompts::version()).add(embedder).add(text);
  return h.finish_hex();
}

std::optional<std::string> EnrichCache::description(const std::string& key) const {
  std::lock_guard lock(mu_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(&it->second.value)) return *s;
  return std::nullopt;
}

std::optional<Embedding> EnrichCache::embedding(const std::string& key) const {
  std::lock_guard lock(mu_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  if (const auto* e = std::get_if<Embedding>(&it->second.value)) return *e;
  return std::nullopt;
}

void EnrichCache::put(CacheEntry entry) {
  std::lock_guard lock(mu_);
  if (entries_.count(entry.key)) return;
  if (entry.created_at.millis == 0) entry.created_at = Timestamp::now();
  if (file_) append(entry);
  const std::string key = entry.key;
  entries_.emplace(key, std::move(entry));
}

std::size_t EnrichCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

void EnrichCache::append(const CacheEntry& e) {
  json j = {{"key", e.key}, {"created_at", e.created_at.iso()}};
  if (const auto* s = std::get_if<std::string>(&e.value)) {
    j["type"] = "description";
    j["value"] = *s;
  } else {
    j["type"] = "embedding";
    j["value"] = encode_embedding(std::get<Embedding>(e.value), EmbeddingEncoding::Base64LittleEndianF32);
  }
  if (!out_) {
    if (file_->has_parent_path()) std::filesystem::create_directories(file_->parent_path());
    out_ = std::make_unique<std::ofstream>(*file_, std::ios::app);
  }
  *out_ << j.dump() << '\n';
  out_->flush();
  if (!*out_) throw Error("cannot write cache file " + file_->string());
}

}  // namespace repograph
