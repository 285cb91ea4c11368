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

#include "repograph/enrich/stub_providers.hpp"

#include <cctype>

#include "repograph/core/error.hpp"

namespace repograph {

namespace {

std::string first_sentence(std::string_view doc) {
  // First paragraph, whitespace collapsed.
  std::string para;
  bool space = false;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const char c = doc[i];
    if (c == '\n' && !para.empty()) {
      std::size_t j = i + 1;
      while (j < doc.size() && (doc[j] == ' ' || doc[j] == '\t' || doc[j] == '\r')) ++j;
      if (j < doc.size() && doc[j] == '\n') break;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !para.empty();
      continue;
    }
    if (space) para.push_back(' ');
    space = false;
    para.push_back(c);
  }
  for (std::size_t i = 0; i < para.size(); ++i) {
    const char c = para[i];
    if ((c == '.' || c == '!' || c == '?') && (i + 1 == para.size() || para[i + 1] == ' '))
      return para.substr(0, i + 1);
  }
  return para;
}

std::uint64_t fnv1a(std::string_view token, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ull;
  for (int i = 0; i < 8; ++i) {
    h ^= (seed >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
  for (unsigned char c : token) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string stub_summarize(const SummaryRequest& request) {
  if (request.docstring) {
    std::string s = first_sentence(*request.docstring);
    if (!s.empty()) return s;
  }
  std::string out(to_string(request.kind));
  out += " " + request.name;
  if (!request.path.empty()) out += " at " + request.path;
  return out;
}

std::vector<std::string> stub_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::size_t stub_bucket(std::string_view token, int dim, std::uint64_t seed) {
  return static_cast<std::size_t>(fnv1a(token, seed) % static_cast<std::uint64_t>(dim));
}

Embedding stub_embed(std::string_view text, int dim, std::uint64_t seed) {
  if (dim <= 0) throw ValidationError("embedding dim must be positive");
  if (text.empty()) throw ValidationError("cannot embed empty text");
  std::vector<float> v(static_cast<std::size_t>(dim), 0.0f);
  auto tokens = stub_tokens(text);
  if (tokens.empty()) tokens.emplace_back(text);
  for (const auto& t : tokens) v[stub_bucket(t, dim, seed)] += 1.0f;
  return Embedding::normalized(std::move(v));
}

StubEmbedder::StubEmbedder(int dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim <= 0) throw ValidationError("embedding dim must be positive");
}

std::string StubEmbedder::identity() const {
  return "stub-embedder/1:dim=" + std::to_string(dim_) + ":seed=" + std::to_string(seed_);
}

std::vector<Embedding> StubEmbedder::embed(const std::vector<std::string>& texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(stub_embed(t, dim_, seed_));
  return out;
}

}  // namespace repograph
