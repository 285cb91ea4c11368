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

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace repograph {

inline constexpr double kDefaultBeta = 3.0;

// Retrieved lists are ordered; a repeated path counts once, at its first
// position. Paths are compared after normalize_eval_path.
std::string normalize_eval_path(std::string path);

// |retrieved ∩ relevant| / |relevant|. UndefinedMetricError when relevant is empty.
double recall(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant);
// |retrieved ∩ relevant| / |retrieved|. UndefinedMetricError when retrieved is empty.
double precision(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant);

// Over the first min(k, |retrieved|) entries. The precision denominator is
// k, so a short list counts its missing tail as misses. k >= 1.
double recall_at_k(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant, std::size_t k);
double precision_at_k(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant,
                      std::size_t k);

// (1 + b^2) p r / (b^2 p + r); 0 when both are 0. beta > 0, p and r in [0, 1].
double fbeta(double p, double r, double beta);
double fbeta_at_k(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant, std::size_t k,
                  double beta = kDefaultBeta);

struct MetricRow {
  double recall = 0.0;     // whole list
  double precision = 0.0;  // whole list; 0 for an empty list
  double recall_at_k = 0.0;
  double precision_at_k = 0.0;
  double fbeta_at_k = 0.0;
  std::size_t k = 0;
  double beta = kDefaultBeta;
  bool found = false;  // a relevant file in the top k
  std::size_t hits_at_k = 0;
  std::size_t relevant_count = 0;
  std::size_t retrieved_count = 0;

  // precision_at_k * k and recall_at_k * |relevant| are integers within 1e-9.
  bool integral() const;
  nlohmann::json to_json() const;
};

// Requires a non-empty relevant set and k >= 1. An empty retrieved list is
// allowed here and scores 0 throughout.
MetricRow compute_metrics(const std::vector<std::string>& retrieved, const std::set<std::string>& relevant,
                          std::size_t k, double beta = kDefaultBeta);

// Mean of the middle two for an even count. UndefinedMetricError when empty.
double median(std::vector<double> values);

}  // namespace repograph
