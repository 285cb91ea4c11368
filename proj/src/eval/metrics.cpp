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

#include "repograph/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "repograph/core/error.hpp"

namespace repograph {

std::string normalize_eval_path(std::string path) {
  std::replace(path.begin(), path.end(), '\\', '/');
  while (path.rfind("./", 0) == 0) path.erase(0, 2);
  while (!path.empty() && path.front() == '/') path.erase(0, 1);
  return path;
}

namespace {

std::set<std::string> normalized(const std::set<std::string>& s) {
  std::set<std::string> out;
  for (const auto& p : s) out.insert(normalize_eval_path(p));
  return out;
}

// Distinct normalized paths in first-seen order, at most `limit`.
std::vector<std::string> distinct_prefix(const std::vector<std::string>& list, std::size_t limit) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : list) {
    if (out.size() >= limit) break;
    auto n = normalize_eval_path(p);
    if (seen.insert(n).second) out.push_back(std::move(n));
  }
  return out;
}

std::size_t hits(const std::vector<std::string>& list, const std::set<std::string>& relevant) {
  std::size_t h = 0;
  for (const auto& p : list) h += relevant.count(p);
  return h;
}

void require_relevant(const std::set<std::string>& relevant) {
  if (relevant.empty()) throw UndefinedMetricError("recall is undefined for an empty relevant set");
}

void require_k(std::size_t k) {
  if (k < 1) throw UndefinedMetricError("k must be at least 1");
}

}  // namespace

double recall(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant) {
  require_relevant(relevant);
  const auto rel = normalized(relevant);
  return static_cast<double>(hits(distinct_prefix(retrieved, retrieved.size()), rel)) /
         static_cast<double>(rel.size());
}

double precision(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant) {
  if (retrieved.empty()) throw UndefinedMetricError("precision is undefined for an empty retrieved list");
  const auto list = distinct_prefix(retrieved, retrieved.size());
  return static_cast<double>(hits(list, normalized(relevant))) / static_cast<double>(list.size());
}

double recall_at_k(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant, std::size_t k) {
  require_k(k);
  require_relevant(relevant);
  const auto rel = normalized(relevant);
  return static_cast<double>(hits(distinct_prefix(retrieved, k), rel)) / static_cast<double>(rel.size());
}

double precision_at_k(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant,
                      std::size_t k) {
  require_k(k);
  return static_cast<double>(hits(distinct_prefix(retrieved, k), normalized(relevant))) / static_cast<double>(k);
}

double fbeta(double p, double r, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw UndefinedMetricError("beta must be positive");
  if (!(p >= 0.0 && p <= 1.0 && r >= 0.0 && r <= 1.0)) throw ValidationError("precision and recall must lie in [0, 1]");
  if (p == 0.0 && r == 0.0) return 0.0;
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (b2 * p + r);
}

double fbeta_at_k(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant, std::size_t k,
                  double beta) {
  return fbeta(precision_at_k(retrieved, relevant, k), recall_at_k(retrieved, relevant, k), beta);
}

bool MetricRow::integral() const {
  const auto near_int = [](double x) { return std::fabs(x - std::round(x)) <= 1e-9; };
  return near_int(precision_at_k * static_cast<double>(k)) &&
         near_int(recall_at_k * static_cast<double>(relevant_count));
}

nlohmann::json MetricRow::to_json() const {
  return {{"recall", recall},
          {"precision", precision},
          {"recall_at_k", recall_at_k},
          {"precision_at_k", precision_at_k},
          {"fbeta_at_k", fbeta_at_k},
          {"k", k},
          {"beta", beta},
          {"found", found},
          {"hits_at_k", hits_at_k},
          {"relevant", relevant_count},
          {"retrieved", retrieved_count}};
}

MetricRow compute_metrics(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant,
                          std::size_t k, double beta) {
  require_k(k);
  require_relevant(relevant);
  MetricRow m;
  m.k = k;
  m.beta = beta;
  const auto rel = normalized(relevant);
  const auto all = distinct_prefix(retrieved, retrieved.size());
  const auto top = distinct_prefix(retrieved, k);
  m.relevant_count = rel.size();
  m.retrieved_count = all.size();
  m.hits_at_k = hits(top, rel);
  const std::size_t hits_all = hits(all, rel);
  m.recall = static_cast<double>(hits_all) / static_cast<double>(rel.size());
  m.precision = all.empty() ? 0.0 : static_cast<double>(hits_all) / static_cast<double>(all.size());
  m.recall_at_k = static_cast<double>(m.hits_at_k) / static_cast<double>(rel.size());
  m.precision_at_k = static_cast<double>(m.hits_at_k) / static_cast<double>(k);
  m.fbeta_at_k = fbeta(m.precision_at_k, m.recall_at_k, beta);
  m.found = m.hits_at_k > 0;
  return m;
}

double median(std::vector<double> values) {
  if (values.empty()) throw UndefinedMetricError("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace repograph
