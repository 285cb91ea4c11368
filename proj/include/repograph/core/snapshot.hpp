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
#include <string>

#include "json.hpp"
#include "repograph/core/graph.hpp"

namespace repograph {

inline constexpr int kSnapshotFormatVersion = 1;

enum class EmbeddingEncoding { FloatArray, Base64LittleEndianF32 };

struct SnapshotOptions {
  EmbeddingEncoding encoding = EmbeddingEncoding::FloatArray;
  bool pretty = false;
};

nlohmann::json to_snapshot_json(const KnowledgeGraph& graph, const SnapshotOptions& options = {});
// Throws UnsupportedVersionError or ParseError (with a JSON pointer location).
KnowledgeGraph from_snapshot_json(const nlohmann::json& doc);

void save_snapshot(const KnowledgeGraph& graph, const std::filesystem::path& destination,
                   const SnapshotOptions& options = {});
KnowledgeGraph load_snapshot(const std::filesystem::path& source);
KnowledgeGraph parse_snapshot(const std::string& text);

// Embedding codec shared with other on-disk formats. Decoding checks unit
// norm and throws ParseError at `where` on malformed input.
nlohmann::json encode_embedding(const Embedding& e, EmbeddingEncoding encoding);
Embedding decode_embedding(const nlohmann::json& j, bool allow_base64, const std::string& where);

// SHA-256 over the canonical snapshot encoding; changes iff graph content does.
std::string content_hash(const KnowledgeGraph& graph);

}  // namespace repograph
