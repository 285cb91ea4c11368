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
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "repograph/core/shared_graph.hpp"

namespace repograph {

// Graphs hosted by one process, keyed by graph_id and persisted as
// <dir>/<graph_id>.json snapshots. Writes to one graph are serialized by its
// SharedGraph; readers keep whatever version they took.
class GraphStore {
 public:
  // Loads every snapshot already in `dir` (created when missing).
  explicit GraphStore(std::filesystem::path dir);

  std::shared_ptr<SharedGraph> find(const std::string& id) const;
  // Throws NotFoundError.
  std::shared_ptr<SharedGraph> get(const std::string& id) const;

  // Persists `graph` and publishes it under its graph_id, replacing any
  // graph of that id. Returns the id.
  std::string put(KnowledgeGraph graph);

  // Runs `fn` on a private copy of graph `id`, persists the copy and
  // publishes it. Nothing is published or written if `fn` throws.
  template <typename Fn>
  auto modify(const std::string& id, Fn&& fn) {
    return get(id)->write([&](KnowledgeGraph& g) {
      auto result = fn(g);
      persist(g);
      return result;
    });
  }

  std::vector<std::string> ids() const;
  std::size_t size() const;
  std::filesystem::path path_of(const std::string& id) const;

  static void check_id(const std::string& id);  // throws ValidationError

 private:
  void persist(const KnowledgeGraph& graph) const;

  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<SharedGraph>> graphs_;
};

}  // namespace repograph
