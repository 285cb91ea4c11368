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

#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "json.hpp"
#include "repograph/core/types.hpp"

namespace repograph {

enum class JobState { Queued, Running, Succeeded, Failed };
std::string_view to_string(JobState s);

struct JobStatus {
  std::string id;
  std::string kind;  // "build" or "update"
  std::string graph_id;
  JobState state = JobState::Queued;
  Timestamp submitted_at;
  std::optional<Timestamp> finished_at;
  nlohmann::json result;  // set on success
  std::string error;      // set on failure
  std::string error_type;

  nlohmann::json to_json() const;
};

// Background jobs, run one at a time in submission order on a single worker.
class JobQueue {
 public:
  using Task = std::function<nlohmann::json()>;

  JobQueue();
  ~JobQueue();
  JobQueue(const JobQueue&) = delete;
  JobQueue& operator=(const JobQueue&) = delete;

  std::string submit(std::string kind, std::string graph_id, Task task);
  std::optional<JobStatus> status(const std::string& id) const;
  // Blocks until every submitted job has finished.
  void wait_idle();

 private:
  void run();

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable idle_cv_;
  std::deque<std::pair<std::string, Task>> pending_;
  std::map<std::string, JobStatus> jobs_;
  std::size_t next_id_ = 1;
  bool running_ = false;
  bool stop_ = false;
  std::thread worker_;
};

}  // namespace repograph
