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

#include "repograph/core/snapshot.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "repograph/core/digest.hpp"
#include "repograph/core/error.hpp"

namespace repograph {

namespace {

using nlohmann::json;

constexpr const char* kB64Flag = "b64le_f32";


json encode_node(const Node& n, EmbeddingEncoding enc) {
  json j = {{"id", n.id.str()},
            {"kind", to_string(n.kind)},
            {"name", n.name},
            {"path", n.path},
            {"last_modified", n.last_modified.iso()},
            {"stale", n.stale},
            {"enrichment_failed", n.enrichment_failed},
            {"parse_failed", n.parse_failed}};
  if (!n.qualified_name.empty()) j["qualified_name"] = n.qualified_name;
  if (n.parent.valid()) j["parent"] = n.parent.str();
  if (n.language) j["language"] = *n.language;
  if (n.size_bytes) j["size_bytes"] = *n.size_bytes;
  if (n.signature) j["signature"] = *n.signature;
  if (n.docstring) j["docstring"] = *n.docstring;
  if (n.raw_content) j["raw_content"] = *n.raw_content;
  if (n.description) j["description"] = *n.description;
  if (n.description_embedding) j["description_embedding"] = encode_embedding(*n.description_embedding, enc);
  if (n.code_embedding) j["code_embedding"] = encode_embedding(*n.code_embedding, enc);
  if (n.line_span) j["line_span"] = {n.line_span->start, n.line_span->end};
  return j;
}

template <typename T>
std::optional<T> opt(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  try {
    return j[key].get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what(), where + "/" + key);
  }
}

NodeId parse_id(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError("node id must be a string", where);
  auto id = NodeId::parse(j.get<std::string>());
  if (!id) throw ParseError("malformed node id '" + j.get<std::string>() + "'", where);
  return *id;
}

Node decode_node(const json& j, bool b64, const std::string& where) {
  if (!j.is_object()) throw ParseError("node record must be an object", where);
  for (const char* key : {"id", "kind", "name", "path", "last_modified"})
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", where);
  Node n;
  n.id = parse_id(j["id"], where + "/id");
  n.kind = parse_node_kind(j["kind"].get<std::string>());
  n.name = j["name"].get<std::string>();
  n.path = j["path"].get<std::string>();
  n.qualified_name = opt<std::string>(j, "qualified_name", where).value_or("");
  if (j.contains("parent")) n.parent = parse_id(j["parent"], where + "/parent");
  n.language = opt<std::string>(j, "language", where);
  n.size_bytes = opt<std::uint64_t>(j, "size_bytes", where);
  n.signature = opt<std::string>(j, "signature", where);
  n.docstring = opt<std::string>(j, "docstring", where);
  n.raw_content = opt<std::string>(j, "raw_content", where);
  n.description = opt<std::string>(j, "description", where);
  if (j.contains("description_embedding"))
    n.description_embedding = decode_embedding(j["description_embedding"], b64, where + "/description_embedding");
  if (j.contains("code_embedding"))
    n.code_embedding = decode_embedding(j["code_embedding"], b64, where + "/code_embedding");
  n.last_modified = Timestamp::parse_iso(j["last_modified"].get<std::string>());
  if (j.contains("line_span")) {
    const auto& s = j["line_span"];
    if (!s.is_array() || s.size() != 2) throw ParseError("line_span must be [start,end]", where + "/line_span");
    n.line_span = LineSpan{s[0].get<int>(), s[1].get<int>()};
  }
  n.stale = j.value("stale", false);
  n.enrichment_failed = j.value("enrichment_failed", false);
  n.parse_failed = j.value("parse_failed", false);
  return n;
}

int load_rank(NodeKind k) {
  switch (k) {
    case NodeKind::Root: return 0;
    case NodeKind::Folder: return 1;
    case NodeKind::File: return 2;
    case NodeKind::Class: return 3;
    case NodeKind::Function: return 4;
    case NodeKind::MemberFunction: return 5;
  }
  return 6;
}

}  // namespace

json encode_embedding(const Embedding& e, EmbeddingEncoding enc) {
  if (enc == EmbeddingEncoding::FloatArray) {
    json arr = json::array();
    for (float v : e.values()) arr.push_back(v);
    return arr;
  }
  std::vector<std::uint8_t> bytes;
  bytes.reserve(e.dim() * 4);
  for (float v : e.values()) {
    std::uint32_t bits = 0;
    std::memcpy(&bits, &v, 4);
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  return base64_encode(bytes);
}

Embedding decode_embedding(const json& j, bool b64, const std::string& where) {
  std::vector<float> values;
  if (j.is_array()) {
    values.reserve(j.size());
    for (const auto& v : j) {
      if (!v.is_number()) throw ParseError("embedding entries must be numbers", where);
      values.push_back(v.get<float>());
    }
  } else if (j.is_string() && b64) {
    const auto bytes = base64_decode(j.get<std::string>());
    if (bytes.size() % 4 != 0) throw ParseError("embedding byte length not a multiple of 4", where);
    values.resize(bytes.size() / 4);
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(bytes[i * 4 + static_cast<std::size_t>(b)]) << (8 * b);
      std::memcpy(&values[i], &bits, 4);
    }
  } else {
    throw ParseError("embedding must be a float array" + std::string(b64 ? " or base64 string" : ""), where);
  }
  try {
    return Embedding::from_unit(std::move(values));
  } catch (const DimensionError& e) {
    throw ParseError(e.what(), where);
  }
}

json to_snapshot_json(const KnowledgeGraph& graph, const SnapshotOptions& options) {
  const auto& m = graph.meta();
  json doc = {{"format_version", kSnapshotFormatVersion},
              {"graph_id", m.graph_id},
              {"repo_url", m.repo_url},
              {"revision", m.revision},
              {"embedding_dim", m.embedding_dim},
              {"provider_fingerprint", m.provider_fingerprint},
              {"created_at", m.created_at.iso()},
              {"updated_at", m.updated_at.iso()}};
  if (options.encoding == EmbeddingEncoding::Base64LittleEndianF32) doc["embedding_encoding"] = kB64Flag;
  json nodes = json::array();
  for (NodeId id : graph.node_ids_sorted()) nodes.push_back(encode_node(graph.at(id), options.encoding));
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const Edge& e : graph.edges_sorted())
    edges.push_back({{"src", e.src.str()}, {"dst", e.dst.str()}, {"kind", to_string(e.kind)}});
  doc["edges"] = std::move(edges);
  return doc;
}

KnowledgeGraph from_snapshot_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("snapshot must be a JSON object", "/");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer())
    throw ParseError("missing integer format_version", "/format_version");
  const int version = doc["format_version"].get<int>();
  if (version != kSnapshotFormatVersion)
    throw UnsupportedVersionError("unsupported snapshot format_version " + std::to_string(version) +
                                  " (supported: " + std::to_string(kSnapshotFormatVersion) + ")");
  bool b64 = false;
  if (doc.contains("embedding_encoding")) {
    if (doc["embedding_encoding"] != kB64Flag)
      throw ParseError("unknown embedding_encoding", "/embedding_encoding");
    b64 = true;
  }
  for (const char* key : {"nodes", "edges"})
    if (!doc.contains(key) || !doc[key].is_array())
      throw ParseError(std::string("'") + key + "' must be an array", std::string("/") + key);

  std::vector<Node> nodes;
  nodes.reserve(doc["nodes"].size());
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    const std::string where = "/nodes/" + std::to_string(i);
    try {
      nodes.push_back(decode_node(doc["nodes"][i], b64, where));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), where);
    } catch (const json::exception& e) {
      throw ParseError(e.what(), where);
    }
  }
  std::stable_sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
    if (load_rank(a.kind) != load_rank(b.kind)) return load_rank(a.kind) < load_rank(b.kind);
    return a.path.size() < b.path.size();
  });

  KnowledgeGraph g;
  g.meta().embedding_dim = doc.value("embedding_dim", 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node& n = nodes[i];
    const NodeId stored = n.id;
    const Timestamp ts = n.last_modified;
    try {
      if (KnowledgeGraph::identity_of(n) != stored)
        throw ParseError("node id does not match its identity key", "/nodes[id=" + stored.str() + "]");
      g.upsert_node(std::move(n), ts);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), "/nodes[id=" + stored.str() + "]");
    }
  }
  const auto& edges = doc["edges"];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "/edges/" + std::to_string(i);
    const auto& e = edges[i];
    try {
      if (!e.is_object() || !e.contains("src") || !e.contains("dst") || !e.contains("kind"))
        throw ParseError("edge needs src, dst and kind", where);
      g.add_edge(parse_id(e["src"], where + "/src"), parse_id(e["dst"], where + "/dst"),
                 parse_edge_kind(e["kind"].get<std::string>()));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& ex) {
      throw ParseError(ex.what(), where);
    } catch (const json::exception& ex) {
      throw ParseError(ex.what(), where);
    }
  }
  auto& m = g.meta();
  try {
    m.graph_id = doc.value("graph_id", std::string());
    m.repo_url = doc.value("repo_url", std::string());
    m.revision = doc.value("revision", std::string());
    m.provider_fingerprint = doc.value("provider_fingerprint", std::string());
    m.created_at = Timestamp::parse_iso(doc.value("created_at", std::string("1970-01-01T00:00:00.000Z")));
    m.updated_at = Timestamp::parse_iso(doc.value("updated_at", std::string("1970-01-01T00:00:00.000Z")));
  } catch (const json::exception& e) {
    throw ParseError(e.what(), "/header");
  }
  return g;
}

void save_snapshot(const KnowledgeGraph& graph, const std::filesystem::path& destination,
                   const SnapshotOptions& options) {
  const std::string text = to_snapshot_json(graph, options).dump(options.pretty ? 1 : -1);
  const auto tmp = destination.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write snapshot to " + destination.string());
    out << text;
    if (!out) throw Error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, destination);
}

KnowledgeGraph parse_snapshot(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  return from_snapshot_json(doc);
}

KnowledgeGraph load_snapshot(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw NotFoundError("cannot open snapshot " + source.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_snapshot(buf.str());
}

std::string content_hash(const KnowledgeGraph& graph) {
  return sha256_hex(to_snapshot_json(graph).dump());
}

}  // namespace repograph
