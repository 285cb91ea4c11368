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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "repograph/eval/metrics.hpp"
#include "repograph/eval/test_cases.hpp"
#include "repograph/retrieval/search.hpp"

namespace repograph {

struct EvalOptions {
  std::size_t k = 50;
  double beta = kDefaultBeta;
  // Query text and k are filled per case; everything else is the template.
  RetrievalRequest request;
  std::size_t max_in_flight = 1;
  std::string repository;  // report label; defaults to the graph's repository
  std::string languages;   // defaults to the File languages present, most common first
};

struct CaseResult {
  TestCase test_case;
  std::vector<std::string> retrieved;  // ranked paths
  std::optional<MetricRow> metrics;    // absent when the pipeline failed
  std::optional<std::string> error;
  double query_seconds = 0.0;
  std::map<std::string, double> stage_ms;

  nlohmann::json to_json() const;
};

struct EvalReport {
  std::string repository;
  std::string languages;
  std::size_t test_cases = 0;    // evaluated successfully
  std::size_t failed_cases = 0;
  std::size_t files_total = 0;   // File nodes in the graph
  std::size_t files_returned = 0;  // k
  double pct_files_returned = 0.0;  // files_returned / files_total * 100
  std::size_t k = 0;
  double beta = kDefaultBeta;
  double median_recall_at_k = 0.0;
  double median_precision_at_k = 0.0;
  double median_fbeta_at_k = 0.0;
  double median_recall = 0.0;
  double percentage_found = 0.0;  // % of cases with a relevant file in the top k
  double median_query_seconds = 0.0;
  bool llm_stages = false;  // the request used an LLM preprocessing mode or LLM discovery
  std::vector<CaseResult> cases;

  nlohmann::json to_json() const;  // summary plus per-case rows
};

// Runs search_relevant per case and aggregates medians over the cases that
// succeeded. Cases may run concurrently; results keep input order.
EvalReport run_eval(const KnowledgeGraph& graph, const std::vector<TestCase>& cases,
                    const SearchProviders& providers, const EvalOptions& options);

struct CaseDelta {
  std::string issue_id;
  double recall_at_k = 0.0;  // b - a
  double precision_at_k = 0.0;
  double fbeta_at_k = 0.0;
};

struct AbReport {
  std::string name_a;
  std::string name_b;
  EvalReport a;
  EvalReport b;
  std::vector<CaseDelta> deltas;  // cases that succeeded under both
  double median_delta_recall_at_k = 0.0;
  double median_delta_precision_at_k = 0.0;
  double median_delta_fbeta_at_k = 0.0;

  nlohmann::json to_json() const;
  // Two-column comparison: a header row naming both configurations, then
  // recall, precision, F-beta medians and percentage found.
  std::string render() const;
};

AbReport ab_compare(const KnowledgeGraph& graph, const std::vector<TestCase>& cases, const SearchProviders& providers,
                    const EvalOptions& config_a, const EvalOptions& config_b, std::string name_a = "A",
                    std::string name_b = "B");

// Column names of the per-repository results table for cut-off k.
std::vector<std::string> results_table_columns(std::size_t k);
// Aligned text table with one row per report (all reports share k).
std::string render_results_table(const std::vector<EvalReport>& reports);

struct LatencyRow {
  std::string repository;
  std::string languages;
  std::size_t nodes = 0;
  std::size_t relationships = 0;
  std::optional<double> build_seconds;
  std::optional<double> query_with_llm_seconds;
  double query_without_llm_seconds = 0.0;

  nlohmann::json to_json() const;
};

std::vector<std::string> latency_table_columns();
std::string render_latency_table(const std::vector<LatencyRow>& rows);

// Median wall time of search_relevant over the cases, once with the
// request as given (only when it uses an LLM stage and a model is
// available) and once without any LLM stage.
LatencyRow measure_latency(const KnowledgeGraph& graph, const std::vector<TestCase>& cases,
                           const SearchProviders& providers, const EvalOptions& options,
                           std::optional<double> build_seconds = std::nullopt);

}  // namespace repograph
