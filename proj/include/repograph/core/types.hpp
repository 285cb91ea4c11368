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

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace repograph {

// Opaque node identifier. Derived from the node's identity key, so the same
// entity gets the same id in every build of the same lineage.
class NodeId {
 public:
  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint64_t value) : value_(value) {}

  constexpr std::uint64_t value() const { return value_; }
  constexpr bool valid() const { return value_ != 0; }

  // 16 lowercase hex digits.
  std::string str() const;
  static std::optional<NodeId> parse(std::string_view text);

  friend constexpr auto operator<=>(NodeId, NodeId) = default;

 private:
  std::uint64_t value_ = 0;
};

enum class NodeKind { Root, Folder, File, Class, Function, MemberFunction };
enum class EdgeKind { Contains, Implements, Calls, Inherits, Refers, Tests };

inline constexpr std::array<NodeKind, 6> kAllNodeKinds = {
    NodeKind::Root,  NodeKind::Folder,   NodeKind::File,
    NodeKind::Class, NodeKind::Function, NodeKind::MemberFunction};
inline constexpr std::array<EdgeKind, 6> kAllEdgeKinds = {
    EdgeKind::Contains, EdgeKind::Implements, EdgeKind::Calls,
    EdgeKind::Inherits, EdgeKind::Refers,     EdgeKind::Tests};

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeKind kind);
// Throw ParseError on unknown names.
NodeKind parse_node_kind(std::string_view name);
EdgeKind parse_edge_kind(std::string_view name);

constexpr bool is_entity(NodeKind k) {
  return k == NodeKind::Class || k == NodeKind::Function ||
         k == NodeKind::MemberFunction;
}
constexpr bool is_callable(NodeKind k) {
  return k == NodeKind::Function || k == NodeKind::MemberFunction;
}

// Endpoint-kind rule for each edge kind.
bool edge_allowed(EdgeKind kind, NodeKind src, NodeKind dst);

// Milliseconds since the Unix epoch, UTC.
struct Timestamp {
  std::int64_t millis = 0;

  static Timestamp now();
  // ISO-8601 with millisecond precision, e.g. 2026-01-02T03:04:05.006Z.
  std::string iso() const;
  static Timestamp parse_iso(std::string_view text);

  friend constexpr auto operator<=>(Timestamp, Timestamp) = default;
};

struct LineSpan {
  int start = 1;
  int end = 1;
  friend constexpr bool operator==(LineSpan, LineSpan) = default;
};

// Unit-norm float vector. Construction normalizes; all-zero input is rejected.
class Embedding {
 public:
  Embedding() = default;

  static Embedding normalized(std::vector<float> raw);
  // Trusts the caller that `unit` already has norm 1 within 1e-5; used when
  // decoding snapshots so stored bytes survive unchanged.
  static Embedding from_unit(std::vector<float> unit);

  std::size_t dim() const { return values_.size(); }
  std::span<const float> values() const { return values_; }
  bool empty() const { return values_.empty(); }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  explicit Embedding(std::vector<float> v) : values_(std::move(v)) {}
  std::vector<float> values_;
};

struct Node {
  NodeId id;
  NodeKind kind = NodeKind::File;
  std::string name;
  std::string path;            // repository-relative; empty only for Root
  std::string qualified_name;  // entities: dotted name unique within file
  NodeId parent;               // Folder/File: parent folder; entities: File or Class

  std::optional<std::string> language;      // File only
  std::optional<std::uint64_t> size_bytes;  // File only
  std::optional<std::string> signature;     // Function / MemberFunction
  std::optional<std::string> docstring;
  std::optional<std::string> raw_content;
  std::optional<std::string> description;
  std::optional<Embedding> description_embedding;
  std::optional<Embedding> code_embedding;
  Timestamp last_modified;
  std::optional<LineSpan> line_span;

  // Enrichment bookkeeping: content changed since the last enrichment run.
  bool stale = true;
  bool enrichment_failed = false;
  bool parse_failed = false;

  friend bool operator==(const Node&, const Node&) = default;
};

bool equal_ignoring_timestamps(const Node& a, const Node& b);

struct Edge {
  NodeId src;
  NodeId dst;
  EdgeKind kind = EdgeKind::Contains;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Direction { Outgoing, Incoming, Both };
std::string_view to_string(Direction d);
Direction parse_direction(std::string_view name);

}  // namespace repograph

template <>
struct std::hash<repograph::NodeId> {
  std::size_t operator()(repograph::NodeId id) const noexcept {
    // Ids are already hash-derived.
    return static_cast<std::size_t>(id.value());
  }
};

template <>
struct std::hash<repograph::Edge> {
  std::size_t operator()(const repograph::Edge& e) const noexcept {
    std::uint64_t h = e.src.value() * 0x9E3779B97F4A7C15ULL;
    h ^= e.dst.value() + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(e.kind) * 0xC2B2AE3D27D4EB4FULL;
    return static_cast<std::size_t>(h);
  }
};
