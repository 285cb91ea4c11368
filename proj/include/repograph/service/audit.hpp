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
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "repograph/core/types.hpp"

namespace repograph {

struct AuditRecord {
  Timestamp timestamp;
  std::string endpoint;        // route pattern, e.g. "POST /graphs/{id}/search"
  std::string request_digest;  // SHA-256 of method, target and body
  std::string graph_id;        // empty when the request names no graph
  double duration_ms = 0.0;
  std::string outcome;  // "ok" or "error"
  int status = 0;

  nlohmann::json to_json() const;
  static AuditRecord from_json(const nlohmann::json& j);
};

std::string request_digest(const std::string& method, const std::string& target, const std::string& body);

// Append-only JSON-lines log. Every append is flushed before it returns.
class AuditLog {
 public:
  explicit AuditLog(std::filesystem::path file);

  void append(const AuditRecord& record);
  std::size_t appended() const;
  const std::filesystem::path& file() const { return file_; }

  static std::vector<AuditRecord> read(const std::filesystem::path& file);

 private:
  mutable std::mutex mu_;
  std::filesystem::path file_;
  std::ofstream out_;
  std::size_t appended_ = 0;
};

}  // namespace repograph
