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

#include "repograph/service/audit.hpp"

#include "repograph/core/digest.hpp"
#include "repograph/core/error.hpp"

namespace repograph {

using nlohmann::json;

json AuditRecord::to_json() const {
  return {{"timestamp", timestamp.iso()},
          {"endpoint", endpoint},
          {"request_digest", request_digest},
          {"graph_id", graph_id.empty() ? json(nullptr) : json(graph_id)},
          {"duration_ms", duration_ms},
          {"outcome", outcome},
          {"status", status}};
}

AuditRecord AuditRecord::from_json(const json& j) {
  AuditRecord r;
  try {
    r.timestamp = Timestamp::parse_iso(j.at("timestamp").get<std::string>());
    r.endpoint = j.at("endpoint").get<std::string>();
    r.request_digest = j.at("request_digest").get<std::string>();
    if (!j.at("graph_id").is_null()) r.graph_id = j["graph_id"].get<std::string>();
    r.duration_ms = j.at("duration_ms").get<double>();
    r.outcome = j.at("outcome").get<std::string>();
    r.status = j.at("status").get<int>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed audit record: ") + e.what(), "audit");
  }
  return r;
}

std::string request_digest(const std::string& method, const std::string& target, const std::string& body) {
  return FieldHasher().add(method).add(target).add(body).finish_hex();
}

AuditLog::AuditLog(std::filesystem::path file) : file_(std::move(file)) {
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  out_.open(file_, std::ios::app);
  if (!out_) throw Error("cannot open audit log " + file_.string());
}

void AuditLog::append(const AuditRecord& record) {
  const std::string line = record.to_json().dump() + "\n";
  std::lock_guard lock(mu_);
  out_ << line;
  out_.flush();
  if (!out_) throw Error("cannot write audit log " + file_.string());
  ++appended_;
}

std::size_t AuditLog::appended() const {
  std::lock_guard lock(mu_);
  return appended_;
}

std::vector<AuditRecord> AuditLog::read(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw NotFoundError("cannot open audit log " + file.string());
  std::vector<AuditRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(AuditRecord::from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), file.string() + ":" + std::to_string(out.size() + 1));
    }
  }
  return out;
}

}  // namespace repograph
