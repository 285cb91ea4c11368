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

#include "repograph/service/graph_store.hpp"

#include <algorithm>

#include "repograph/core/error.hpp"
#include "repograph/core/snapshot.hpp"

namespace repograph {

namespace fs = std::filesystem;

GraphStore::GraphStore(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    KnowledgeGraph g = load_snapshot(entry.path());
    const std::string id = g.meta().graph_id;
    if (id != entry.path().stem().string())
      throw ParseError("snapshot graph_id '" + id + "' does not match its file name", entry.path().string());
    graphs_.emplace(id, std::make_shared<SharedGraph>(std::move(g)));
  }
}

void GraphStore::check_id(const std::string& id) {
  const bool ok = !id.empty() && id.size() <= 128 && std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_' || c == '.';
  }) && id.front() != '.';
  if (!ok) throw ValidationError("invalid graph id '" + id + "' (use [A-Za-z0-9._-], not starting with '.')");
}

std::shared_ptr<SharedGraph> GraphStore::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = graphs_.find(id);
  return it == graphs_.end() ? nullptr : it->second;
}

std::shared_ptr<SharedGraph> GraphStore::get(const std::string& id) const {
  auto g = find(id);
  if (!g) throw NotFoundError("unknown graph '" + id + "'");
  return g;
}

fs::path GraphStore::path_of(const std::string& id) const { return dir_ / (id + ".json"); }

void GraphStore::persist(const KnowledgeGraph& graph) const {
  save_snapshot(graph, path_of(graph.meta().graph_id), {EmbeddingEncoding::Base64LittleEndianF32, false});
}

std::string GraphStore::put(KnowledgeGraph graph) {
  const std::string id = graph.meta().graph_id;
  check_id(id);
  std::shared_ptr<SharedGraph> existing;
  {
    std::lock_guard lock(mu_);
    auto it = graphs_.find(id);
    if (it != graphs_.end()) existing = it->second;
  }
  if (existing) {
    existing->write([&](KnowledgeGraph& g) {
      persist(graph);
      g = std::move(graph);
    });
    return id;
  }
  persist(graph);
  std::lock_guard lock(mu_);
  auto [it, inserted] = graphs_.emplace(id, nullptr);
  if (inserted)
    it->second = std::make_shared<SharedGraph>(std::move(graph));
  else
    it->second->replace(std::move(graph));
  return id;
}

std::vector<std::string> GraphStore::ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, g] : graphs_) out.push_back(id);
  return out;
}

std::size_t GraphStore::size() const {
  std::lock_guard lock(mu_);
  return graphs_.size();
}

}  // namespace repograph
