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

#include "repograph/core/types.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

#include "repograph/core/error.hpp"

namespace repograph {

std::string NodeId::str() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value_));
  return buf;
}

std::optional<NodeId> NodeId::parse(std::string_view text) {
  if (text.size() != 16) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : text) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
    else return std::nullopt;
  }
  return NodeId(v);
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Root: return "Root";
    case NodeKind::Folder: return "Folder";
    case NodeKind::File: return "File";
    case NodeKind::Class: return "Class";
    case NodeKind::Function: return "Function";
    case NodeKind::MemberFunction: return "MemberFunction";
  }
  return "?";
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Contains: return "Contains";
    case EdgeKind::Implements: return "Implements";
    case EdgeKind::Calls: return "Calls";
    case EdgeKind::Inherits: return "Inherits";
    case EdgeKind::Refers: return "Refers";
    case EdgeKind::Tests: return "Tests";
  }
  return "?";
}

NodeKind parse_node_kind(std::string_view name) {
  for (auto k : kAllNodeKinds)
    if (to_string(k) == name) return k;
  throw ParseError("unknown NodeKind '" + std::string(name) + "'", "kind");
}

EdgeKind parse_edge_kind(std::string_view name) {
  for (auto k : kAllEdgeKinds)
    if (to_string(k) == name) return k;
  throw ParseError("unknown EdgeKind '" + std::string(name) + "'", "kind");
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Outgoing: return "outgoing";
    case Direction::Incoming: return "incoming";
    case Direction::Both: return "both";
  }
  return "?";
}

Direction parse_direction(std::string_view name) {
  if (name == "outgoing") return Direction::Outgoing;
  if (name == "incoming") return Direction::Incoming;
  if (name == "both") return Direction::Both;
  throw ValidationError("direction must be one of outgoing|incoming|both, got '" +
                        std::string(name) + "'");
}

bool edge_allowed(EdgeKind kind, NodeKind src, NodeKind dst) {
  using K = NodeKind;
  switch (kind) {
    case EdgeKind::Contains:
      return ((src == K::Root || src == K::Folder) && (dst == K::Folder || dst == K::File)) ||
             (src == K::File && (dst == K::Class || dst == K::Function));
    case EdgeKind::Implements:
      return (src == K::File && is_entity(dst)) ||
             (src == K::Class && dst == K::MemberFunction);
    case EdgeKind::Calls:
      return is_callable(src) && is_callable(dst);
    case EdgeKind::Inherits:
      return src == K::Class && dst == K::Class;
    case EdgeKind::Refers:
      return src == K::File && dst == K::File;
    case EdgeKind::Tests:
      return (src == K::File || is_callable(src)) && (dst == K::File || is_callable(dst));
  }
  return false;
}

Timestamp Timestamp::now() {
  using namespace std::chrono;
  return {duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count()};
}

std::string Timestamp::iso() const {
  std::int64_t secs = millis / 1000;
  std::int64_t ms = millis % 1000;
  if (ms < 0) {
    ms += 1000;
    --secs;
  }
  const std::time_t t = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(ms));
  return buf;
}

Timestamp Timestamp::parse_iso(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0, ms = 0;
  const std::string str(text);
  const int n = std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3dZ", &y, &mo, &d, &h, &mi, &s, &ms);
  if (n < 6) throw ParseError("invalid timestamp '" + str + "'", "timestamp");
  std::tm tm{};
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = s;
  const std::int64_t secs = static_cast<std::int64_t>(timegm(&tm));
  return {secs * 1000 + (n == 7 ? ms : 0)};
}

Embedding Embedding::normalized(std::vector<float> raw) {
  double sq = 0.0;
  for (float v : raw) sq += static_cast<double>(v) * v;
  if (raw.empty() || sq == 0.0) throw DimensionError("embedding is empty or all-zero");
  const double inv = 1.0 / std::sqrt(sq);
  for (float& v : raw) v = static_cast<float>(v * inv);
  return Embedding(std::move(raw));
}

Embedding Embedding::from_unit(std::vector<float> unit) {
  double sq = 0.0;
  for (float v : unit) sq += static_cast<double>(v) * v;
  if (unit.empty() || std::abs(std::sqrt(sq) - 1.0) > 1e-5)
    throw DimensionError("stored embedding is not unit-norm");
  return Embedding(std::move(unit));
}

bool equal_ignoring_timestamps(const Node& a, const Node& b) {
  Node x = a;
  Node y = b;
  x.last_modified = {};
  y.last_modified = {};
  return x == y;
}

}  // namespace repograph
