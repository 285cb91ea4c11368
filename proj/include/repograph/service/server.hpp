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

#include <memory>
#include <string>

#include "repograph/service/audit.hpp"
#include "repograph/service/config.hpp"
#include "repograph/service/graph_store.hpp"
#include "repograph/service/jobs.hpp"
#include "repograph/service/provider_set.hpp"

namespace repograph {

// HTTP front end over a GraphStore:
//   POST /graphs                       build (job unless async=false)
//   POST /graphs/{id}/update           incremental update, 409 on a revision mismatch
//   POST /graphs/{id}/search           ranked files with provenance
//   GET  /graphs/{id}/stats
//   GET  /graphs/{id}/nodes?path=      also ?kind=
//   GET  /graphs/{id}/subgraph?files=a,b&depth=1
//   GET  /graphs/{id}/clusters?method=&seed=&resolution=
//   GET  /jobs/{id}
//   GET  /healthz                      {status, graphs_loaded}; not audited
// Every other request appends exactly one AuditRecord before its response
// is written. Errors are {"error":{"status","type","message"}}.
class Service {
 public:
  Service(ServiceConfig config, ProviderSet providers);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds `host` to an ephemeral port and returns it; serve() then blocks.
  int bind_any_port(const std::string& host = "127.0.0.1");
  void bind(const std::string& host, int port);  // throws Error
  void serve();
  void stop();
  void wait_until_ready() const;

  const ServiceConfig& config() const;
  GraphStore& store();
  AuditLog& audit();
  JobQueue& jobs();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace repograph
