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

#include "repograph/eval/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "repograph/core/error.hpp"
#include "repograph/core/file_types.hpp"

namespace repograph {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Up to three decimals, trailing zeros dropped: 1, 0.02, 0.927.
std::string fmt_metric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

std::string fmt_fixed(double v, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  // Width in code points so β counts once.
  const auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80;
    return w;
  };
  std::vector<std::size_t> w(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    w[c] = width(header[c]);
    for (const auto& r : rows) w[c] = std::max(w[c], width(r[c]));
  }
  const auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += " | ";
      out += cells[c];
      if (c + 1 < cells.size()) out.append(w[c] - width(cells[c]), ' ');
    }
    return out + "\n";
  };
  std::string out = line(header);
  std::string rule;
  for (std::size_t c = 0; c < w.size(); ++c) rule += (c ? "-+-" : "") + std::string(w[c], '-');
  out += rule + "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

std::string default_repository(const KnowledgeGraph& g) {
  std::string url = g.meta().repo_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  if (url.size() > 4 && url.compare(url.size() - 4, 4, ".git") == 0) url.resize(url.size() - 4);
  const auto slash = url.find_last_of("/:");
  if (!url.empty()) return slash == std::string::npos ? url : url.substr(slash + 1);
  if (const auto r = g.root()) return g.at(*r).name;
  return "";
}

std::string default_languages(const KnowledgeGraph& g) {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& [id, n] : g.nodes())
    if (n.kind == NodeKind::File && n.language && category_for_path(n.path) == FileCategory::Source) {
      ++counts[*n.language];
      ++total;
    }
  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (const auto& [l, c] : counts) ranked.emplace_back(c, l);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::string out;
  for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) {
    if (ranked[i].first * 10 < total) break;
    out += (out.empty() ? "" : ", ") + ranked[i].second;
  }
  return out;
}

bool uses_llm(const RetrievalRequest& r, const SearchProviders& p) {
  return p.llm && (r.mode != PreprocessMode::None || r.enable_discovery);
}

}  // namespace

nlohmann::json CaseResult::to_json() const {
  nlohmann::json j = {{"issue_id", test_case.issue_id},
                      {"pr_id", test_case.pr_id},
                      {"ground_truth", test_case.ground_truth},
                      {"retrieved", retrieved},
                      {"query_seconds", query_seconds},
                      {"stage_ms", stage_ms}};
  j["metrics"] = metrics ? metrics->to_json() : nlohmann::json();
  j["error"] = error ? nlohmann::json(*error) : nlohmann::json();
  return j;
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : cases) rows.push_back(c.to_json());
  return {{"repository", repository},
          {"languages", languages},
          {"test_cases", test_cases},
          {"failed_cases", failed_cases},
          {"files_total", files_total},
          {"files_returned", files_returned},
          {"pct_files_returned", pct_files_returned},
          {"k", k},
          {"beta", beta},
          {"median_recall_at_k", median_recall_at_k},
          {"median_precision_at_k", median_precision_at_k},
          {"median_fbeta_at_k", median_fbeta_at_k},
          {"median_recall", median_recall},
          {"percentage_found", percentage_found},
          {"median_query_seconds", median_query_seconds},
          {"llm_stages", llm_stages},
          {"cases", rows}};
}

EvalReport run_eval(const KnowledgeGraph& graph, const std::vector<TestCase>& cases,
                    const SearchProviders& providers, const EvalOptions& options) {
  if (cases.empty()) throw ValidationError("evaluation needs at least one test case");
  if (options.k < 1) throw ValidationError("k must be at least 1");
  if (!(options.beta > 0.0)) throw ValidationError("beta must be positive");
  for (const auto& c : cases) c.validate();
  RetrievalRequest probe = options.request;
  probe.query_text = "probe";
  probe.k = options.k;
  probe.validate();

  EvalReport r;
  r.k = options.k;
  r.beta = options.beta;
  r.repository = options.repository.empty() ? default_repository(graph) : options.repository;
  r.languages = options.languages.empty() ? default_languages(graph) : options.languages;
  for (const auto& [id, n] : graph.nodes()) r.files_total += n.kind == NodeKind::File;
  r.files_returned = options.k;
  r.pct_files_returned =
      r.files_total ? 100.0 * static_cast<double>(options.k) / static_cast<double>(r.files_total) : 0.0;
  r.llm_stages = uses_llm(options.request, providers);
  r.cases.resize(cases.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      CaseResult& out = r.cases[i];
      out.test_case = cases[i];
      RetrievalRequest req = options.request;
      req.query_text = cases[i].issue_text;
      req.k = options.k;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const auto resp = search_relevant(graph, req, providers);
        out.query_seconds = seconds_since(t0);
        out.stage_ms = resp.timings_ms;
        for (const auto& f : resp.results) out.retrieved.push_back(f.path);
        out.metrics = compute_metrics(out.retrieved, cases[i].ground_truth, options.k, options.beta);
      } catch (const Error& e) {
        out.query_seconds = seconds_since(t0);
        out.error = e.what();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.max_in_flight, cases.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<double> rk, pk, fk, rc, qs;
  std::size_t found = 0;
  for (const auto& c : r.cases) {
    if (!c.metrics) {
      ++r.failed_cases;
      continue;
    }
    ++r.test_cases;
    rk.push_back(c.metrics->recall_at_k);
    pk.push_back(c.metrics->precision_at_k);
    fk.push_back(c.metrics->fbeta_at_k);
    rc.push_back(c.metrics->recall);
    qs.push_back(c.query_seconds);
    found += c.metrics->found;
  }
  if (r.test_cases > 0) {
    r.median_recall_at_k = median(rk);
    r.median_precision_at_k = median(pk);
    r.median_fbeta_at_k = median(fk);
    r.median_recall = median(rc);
    r.median_query_seconds = median(qs);
    r.percentage_found = 100.0 * static_cast<double>(found) / static_cast<double>(r.test_cases);
  }
  return r;
}

nlohmann::json AbReport::to_json() const {
  nlohmann::json d = nlohmann::json::array();
  for (const auto& c : deltas)
    d.push_back({{"issue_id", c.issue_id},
                 {"recall_at_k", c.recall_at_k},
                 {"precision_at_k", c.precision_at_k},
                 {"fbeta_at_k", c.fbeta_at_k}});
  return {{"a", {{"name", name_a}, {"report", a.to_json()}}},
          {"b", {{"name", name_b}, {"report", b.to_json()}}},
          {"deltas", d},
          {"median_delta",
           {{"recall_at_k", median_delta_recall_at_k},
            {"precision_at_k", median_delta_precision_at_k},
            {"fbeta_at_k", median_delta_fbeta_at_k}}}};
}

std::string AbReport::render() const {
  const std::string k = std::to_string(a.k);
  std::vector<std::vector<std::string>> rows = {
      {"Median Recall@" + k, fmt_metric(a.median_recall_at_k), fmt_metric(b.median_recall_at_k)},
      {"Median Precision@" + k, fmt_metric(a.median_precision_at_k), fmt_metric(b.median_precision_at_k)},
      {"Median Fβ@" + k, fmt_metric(a.median_fbeta_at_k), fmt_metric(b.median_fbeta_at_k)},
      {"Percentage found, %", fmt_fixed(a.percentage_found, 1), fmt_fixed(b.percentage_found, 1)},
  };
  return render_table({"Configuration", name_a, name_b}, rows);
}

AbReport ab_compare(const KnowledgeGraph& graph, const std::vector<TestCase>& cases, const SearchProviders& providers,
                    const EvalOptions& config_a, const EvalOptions& config_b, std::string name_a,
                    std::string name_b) {
  if (config_a.k != config_b.k) throw ValidationError("both configurations must use the same k");
  AbReport r;
  r.name_a = std::move(name_a);
  r.name_b = std::move(name_b);
  r.a = run_eval(graph, cases, providers, config_a);
  r.b = run_eval(graph, cases, providers, config_b);
  std::vector<double> dr, dp, df;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& ma = r.a.cases[i].metrics;
    const auto& mb = r.b.cases[i].metrics;
    if (!ma || !mb) continue;
    CaseDelta d{cases[i].issue_id, mb->recall_at_k - ma->recall_at_k, mb->precision_at_k - ma->precision_at_k,
                mb->fbeta_at_k - ma->fbeta_at_k};
    dr.push_back(d.recall_at_k);
    dp.push_back(d.precision_at_k);
    df.push_back(d.fbeta_at_k);
    r.deltas.push_back(std::move(d));
  }
  if (!r.deltas.empty()) {
    r.median_delta_recall_at_k = median(dr);
    r.median_delta_precision_at_k = median(dp);
    r.median_delta_fbeta_at_k = median(df);
  }
  return r;
}

std::vector<std::string> results_table_columns(std::size_t k) {
  const std::string ks = std::to_string(k);
  return {"Repository",      "Languages",           "Test cases",
          "Files total",     "Files returned",      "% Files returned",
          "Median Recall@" + ks, "Median Precision@" + ks, "Median Fβ@" + ks};
}

std::string render_results_table(const std::vector<EvalReport>& reports) {
  const std::size_t k = reports.empty() ? 0 : reports.front().k;
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    if (r.k != k) throw ValidationError("all reports in one table must share k");
    rows.push_back({r.repository, r.languages, std::to_string(r.test_cases), std::to_string(r.files_total),
                    std::to_string(r.files_returned), fmt_fixed(r.pct_files_returned, 1) + "%",
                    fmt_metric(r.median_recall_at_k), fmt_metric(r.median_precision_at_k),
                    fmt_metric(r.median_fbeta_at_k)});
  }
  return render_table(results_table_columns(k), rows);
}

nlohmann::json LatencyRow::to_json() const {
  const auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); };
  return {{"repository", repository},
          {"languages", languages},
          {"nodes", nodes},
          {"relationships", relationships},
          {"build_seconds", opt(build_seconds)},
          {"query_with_llm_seconds", opt(query_with_llm_seconds)},
          {"query_without_llm_seconds", query_without_llm_seconds}};
}

std::vector<std::string> latency_table_columns() {
  return {"Repository",
          "Languages",
          "Nodes total",
          "Relationships total",
          "Graph creation time with cache, s",
          "Query time with LLM, s",
          "Query time without LLM, s"};
}

std::string render_latency_table(const std::vector<LatencyRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  const auto opt = [](const std::optional<double>& v) { return v ? fmt_fixed(*v, 2) : std::string("-"); };
  for (const auto& r : rows)
    cells.push_back({r.repository, r.languages, std::to_string(r.nodes), std::to_string(r.relationships),
                     opt(r.build_seconds), opt(r.query_with_llm_seconds), fmt_fixed(r.query_without_llm_seconds, 2)});
  return render_table(latency_table_columns(), cells);
}

LatencyRow measure_latency(const KnowledgeGraph& graph, const std::vector<TestCase>& cases,
                           const SearchProviders& providers, const EvalOptions& options,
                           std::optional<double> build_seconds) {
  LatencyRow row;
  row.nodes = graph.node_count();
  row.relationships = graph.edge_count();
  row.build_seconds = build_seconds;
  EvalOptions plain = options;
  plain.max_in_flight = 1;
  plain.request.mode = PreprocessMode::None;
  plain.request.enable_discovery = false;
  const auto without = run_eval(graph, cases, {providers.embedder, nullptr}, plain);
  row.repository = without.repository;
  row.languages = without.languages;
  row.query_without_llm_seconds = without.median_query_seconds;
  if (uses_llm(options.request, providers)) {
    EvalOptions with = options;
    with.max_in_flight = 1;
    row.query_with_llm_seconds = run_eval(graph, cases, providers, with).median_query_seconds;
  }
  return row;
}

}  // namespace repograph
