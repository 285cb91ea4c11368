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

#include "repograph/service/jobs.hpp"

#include "repograph/core/error.hpp"
#include "repograph/service/errors.hpp"

namespace repograph {

std::string_view to_string(JobState s) {
  switch (s) {
    case JobState::Queued: return "queued";
    case JobState::Running: return "running";
    case JobState::Succeeded: return "succeeded";
    case JobState::Failed: return "failed";
  }
  return "unknown";
}

nlohmann::json JobStatus::to_json() const {
  nlohmann::json j = {{"id", id},
                      {"kind", kind},
                      {"graph_id", graph_id},
                      {"state", std::string(to_string(state))},
                      {"submitted_at", submitted_at.iso()}};
  if (finished_at) j["finished_at"] = finished_at->iso();
  if (state == JobState::Succeeded) j["result"] = result;
  if (state == JobState::Failed) j["error"] = {{"type", error_type}, {"message", error}};
  return j;
}

JobQueue::JobQueue() : worker_([this] { run(); }) {}

JobQueue::~JobQueue() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  worker_.join();
}

std::string JobQueue::submit(std::string kind, std::string graph_id, Task task) {
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = "job-" + std::to_string(next_id_++);
    JobStatus s;
    s.id = id;
    s.kind = std::move(kind);
    s.graph_id = std::move(graph_id);
    s.submitted_at = Timestamp::now();
    jobs_.emplace(id, std::move(s));
    pending_.emplace_back(id, std::move(task));
  }
  cv_.notify_all();
  return id;
}

std::optional<JobStatus> JobQueue::status(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return std::nullopt;
  return it->second;
}

void JobQueue::wait_idle() {
  std::unique_lock lock(mu_);
  idle_cv_.wait(lock, [&] { return pending_.empty() && !running_; });
}

void JobQueue::run() {
  for (;;) {
    std::pair<std::string, Task> job;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return stop_ || !pending_.empty(); });
      if (pending_.empty()) return;
      job = std::move(pending_.front());
      pending_.pop_front();
      running_ = true;
      jobs_[job.first].state = JobState::Running;
    }
    nlohmann::json result;
    std::string error, error_type;
    try {
      result = job.second();
    } catch (const Error& e) {
      error = e.what();
      error_type = error_kind(e);
    } catch (const std::exception& e) {
      error = e.what();
      error_type = "internal";
    }
    {
      std::lock_guard lock(mu_);
      JobStatus& s = jobs_[job.first];
      s.finished_at = Timestamp::now();
      if (error_type.empty()) {
        s.state = JobState::Succeeded;
        if (s.graph_id.empty() && result.is_object() && result.contains("graph_id") && result["graph_id"].is_string())
          s.graph_id = result["graph_id"].get<std::string>();
        s.result = std::move(result);
      } else {
        s.state = JobState::Failed;
        s.error = std::move(error);
        s.error_type = std::move(error_type);
      }
      running_ = false;
    }
    idle_cv_.notify_all();
  }
}

}  // namespace repograph
