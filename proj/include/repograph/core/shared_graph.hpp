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

#include <functional>
#include <memory>
#include <mutex>

#include "repograph/core/graph.hpp"

namespace repograph {

// Many readers, one writer. Readers take an immutable snapshot and keep it
// for as long as they like; a writer works on a private copy and publishes it
// atomically, so a reader never observes a half-applied write.
class SharedGraph {
 public:
  explicit SharedGraph(KnowledgeGraph graph)
      : current_(std::make_shared<const KnowledgeGraph>(std::move(graph))) {}

  std::shared_ptr<const KnowledgeGraph> read() const {
    std::lock_guard lock(publish_mutex_);
    return current_;
  }

  // Serialized with other writers. If `fn` throws, nothing is published.
  template <typename Fn>
  auto write(Fn&& fn) {
    std::lock_guard writer(writer_mutex_);
    auto copy = std::make_shared<KnowledgeGraph>(*read());
    if constexpr (std::is_void_v<std::invoke_result_t<Fn, KnowledgeGraph&>>) {
      fn(*copy);
      publish(std::move(copy));
    } else {
      auto result = fn(*copy);
      publish(std::move(copy));
      return result;
    }
  }

  void replace(KnowledgeGraph graph) {
    std::lock_guard writer(writer_mutex_);
    publish(std::make_shared<KnowledgeGraph>(std::move(graph)));
  }

 private:
  void publish(std::shared_ptr<KnowledgeGraph> next) {
    std::lock_guard lock(publish_mutex_);
    current_ = std::move(next);
  }

  mutable std::mutex publish_mutex_;
  std::mutex writer_mutex_;
  std::shared_ptr<const KnowledgeGraph> current_;
};

}  // namespace repograph
