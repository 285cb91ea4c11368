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

#include <chrono>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "repograph/clustering/clustering.hpp"
#include "repograph/core/error.hpp"
#include "repograph/core/query.hpp"
#include "repograph/core/snapshot.hpp"
#include "repograph/eval/harness.hpp"
#include "repograph/eval/test_cases.hpp"
#include "repograph/service/errors.hpp"
#include "repograph/service/operations.hpp"
#include "repograph/service/server.hpp"

namespace {

using namespace repograph;
using nlohmann::json;

constexpr int kUsage = 1;
constexpr int kFailure = 2;

// Bad flag values detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Fn>
auto as_usage(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

struct Globals {
  bool json_output = false;
  std::string config_file;
};

ServiceConfig load_service_config(const Globals& g) {
  ServiceConfig c = g.config_file.empty() ? ServiceConfig{} : load_config(g.config_file);
  apply_env(c);
  return c;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// Left-aligned columns separated by two spaces.
std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

void emit(const Globals& g, const json& j, const std::string& human) {
  if (g.json_output)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

std::string stats_table(const json& stats) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [k, v] : stats["stats"]["nodes"].items()) rows.push_back({"node", k, std::to_string(v.get<std::size_t>())});
  for (const auto& [k, v] : stats["stats"]["edges"].items()) rows.push_back({"edge", k, std::to_string(v.get<std::size_t>())});
  std::string head = "graph " + stats["graph_id"].get<std::string>() + " at " + stats["revision"].get<std::string>() +
                     "\n";
  return head + table({"type", "kind", "count"}, rows);
}

void save(const KnowledgeGraph& g, const std::string& path) {
  save_snapshot(g, path, {EmbeddingEncoding::Base64LittleEndianF32, false});
}

std::unique_ptr<EnrichCache> open_cache(const std::string& path) {
  return path.empty() ? std::make_unique<EnrichCache>() : std::make_unique<EnrichCache>(path);
}

struct SearchFlags {
  std::string query;
  std::size_t k = 0;  // 0 = config default
  std::string mode;
  std::optional<double> budget;
  bool no_llm = false;
  bool no_traversal = false;
  bool no_discovery = false;
};

SearchFlags* add_search_flags(CLI::App* cmd, SearchFlags& f, bool need_query) {
  auto* q = cmd->add_option("--query,-q", f.query, "Issue or question text");
  if (need_query) q->required();
  cmd->add_option("--k,-k", f.k, "Files to return")->check(CLI::PositiveNumber);
  cmd->add_option("--mode", f.mode, "Query preprocessing: none, llm, concat, selective");
  cmd->add_option("--budget", f.budget, "Semantic candidates as a share of all files, (0, 1]");
  cmd->add_flag("--no-llm", f.no_llm, "Never call the language model");
  cmd->add_flag("--no-traversal", f.no_traversal, "Skip graph expansion");
  cmd->add_flag("--no-discovery", f.no_discovery, "Skip mentioned-file discovery");
  return &f;
}

SearchRequest search_request(const SearchFlags& f, const ServiceConfig& config, bool need_query) {
  return as_usage([&] {
    json body = json::object();
    body["query"] = need_query ? f.query : std::string("placeholder");
    if (f.k) body["k"] = f.k;
    if (!f.mode.empty()) body["mode"] = f.mode;
    if (f.budget) body["budget_fraction"] = *f.budget;
    if (f.no_traversal) body["traversal"] = "off";
    if (f.no_discovery) body["enable_discovery"] = false;
    body["use_llm"] = !f.no_llm;
    return parse_search_request(body, config.search);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repository knowledge graphs: build, enrich, search, cluster, evaluate and serve."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json_output, "Machine-readable JSON on stdout");
  app.add_option("--config", g.config_file, "Service configuration file (JSON)")->check(CLI::ExistingFile);

  // build
  BuildRequest build;
  std::string build_out, build_cache;
  auto* cmd_build = app.add_subcommand("build", "Build a graph from a repository and write a snapshot");
  cmd_build->add_option("--repo", build.repo.url_or_path, "Local path or clone URL")->required();
  cmd_build->add_option("--rev", build.repo.revision, "Revision (default HEAD)");
  cmd_build->add_option("--graph-id", build.graph_id, "Graph id (default derived from the URL)");
  cmd_build->add_option("--out,-o", build_out, "Snapshot file")->required();
  cmd_build->add_option("--cache", build_cache, "Enrichment cache file (JSON lines)");
  bool build_no_enrich = false;
  cmd_build->add_flag("--no-enrich", build_no_enrich, "Structure only; no summaries or embeddings");

  // update
  UpdateRequest update;
  std::string update_graph_file, update_out, update_cache;
  bool update_no_enrich = false;
  auto* cmd_update = app.add_subcommand("update", "Apply the changes between two revisions to a snapshot");
  cmd_update->add_option("--graph,-g", update_graph_file, "Snapshot file")->required()->check(CLI::ExistingFile);
  cmd_update->add_option("--from", update.old_revision, "Revision the graph was built at")->required();
  cmd_update->add_option("--to", update.new_revision, "Target revision")->required();
  cmd_update->add_option("--repo", update.repo, "Repository (default: the graph's own)");
  cmd_update->add_option("--out,-o", update_out, "Output snapshot (default: overwrite --graph)");
  cmd_update->add_option("--cache", update_cache, "Enrichment cache file (JSON lines)");
  cmd_update->add_flag("--no-enrich", update_no_enrich, "Leave changed nodes stale");

  // enrich
  std::string enrich_graph_file, enrich_out, enrich_cache;
  bool enrich_all = false;
  auto* cmd_enrich = app.add_subcommand("enrich", "Summarize and embed the nodes of a snapshot");
  cmd_enrich->add_option("--graph,-g", enrich_graph_file, "Snapshot file")->required()->check(CLI::ExistingFile);
  cmd_enrich->add_option("--out,-o", enrich_out, "Output snapshot (default: overwrite --graph)");
  cmd_enrich->add_option("--cache", enrich_cache, "Enrichment cache file (JSON lines)");
  cmd_enrich->add_flag("--all", enrich_all, "Re-enrich every node, not only stale ones");

  // search
  std::string search_graph_file;
  SearchFlags search_flags;
  auto* cmd_search = app.add_subcommand("search", "Rank the files relevant to a query");
  cmd_search->add_option("--graph,-g", search_graph_file, "Snapshot file")->required()->check(CLI::ExistingFile);
  add_search_flags(cmd_search, search_flags, true);

  // cluster
  std::string cluster_graph_file, cluster_method;
  std::optional<std::uint64_t> cluster_seed;
  std::optional<double> cluster_resolution;
  bool cluster_no_llm = false;
  auto* cmd_cluster = app.add_subcommand("cluster", "Group the repository's files into clusters");
  cmd_cluster->add_option("--graph,-g", cluster_graph_file, "Snapshot file")->required()->check(CLI::ExistingFile);
  cmd_cluster->add_option("--method,-m", cluster_method, "louvain, label-propagation or semantic");
  cmd_cluster->add_option("--seed", cluster_seed, "Random seed");
  cmd_cluster->add_option("--resolution", cluster_resolution, "Modularity resolution")->check(CLI::PositiveNumber);
  cmd_cluster->add_flag("--no-llm", cluster_no_llm, "Heuristic cluster labels only");

  // eval
  std::string eval_graph_file, eval_cases_file, eval_out, eval_repository, eval_languages;
  std::size_t eval_k = 50;
  double eval_beta = kDefaultBeta;
  std::size_t eval_jobs = 1;
  SearchFlags eval_flags;
  bool eval_latency = false;
  auto* cmd_eval = app.add_subcommand("eval", "Score retrieval against test cases");
  cmd_eval->add_option("--graph,-g", eval_graph_file, "Snapshot file")->required()->check(CLI::ExistingFile);
  cmd_eval->add_option("--cases,-c", eval_cases_file, "Test cases (JSON lines)")->required()->check(CLI::ExistingFile);
  cmd_eval->add_option("--k,-k", eval_k, "Cut-off")->check(CLI::PositiveNumber);
  cmd_eval->add_option("--beta", eval_beta, "F-beta weight")->check(CLI::PositiveNumber);
  cmd_eval->add_option("--mode", eval_flags.mode, "Query preprocessing: none, llm, concat, selective");
  cmd_eval->add_option("--budget", eval_flags.budget, "Semantic candidates as a share of all files");
  cmd_eval->add_flag("--no-llm", eval_flags.no_llm, "Never call the language model");
  cmd_eval->add_flag("--no-traversal", eval_flags.no_traversal, "Skip graph expansion");
  cmd_eval->add_flag("--no-discovery", eval_flags.no_discovery, "Skip mentioned-file discovery");
  cmd_eval->add_option("--jobs,-j", eval_jobs, "Cases evaluated concurrently")->check(CLI::PositiveNumber);
  cmd_eval->add_option("--repository", eval_repository, "Repository label in the report");
  cmd_eval->add_option("--languages", eval_languages, "Languages label in the report");
  cmd_eval->add_option("--out,-o", eval_out, "Write the full report (JSON) here");
  cmd_eval->add_flag("--latency", eval_latency, "Also measure query latency");

  // cases
  std::string cases_repo, cases_branch = "main", cases_cutoff, cases_out, cases_fixture, cases_record, cases_api;
  auto* cmd_cases = app.add_subcommand("cases", "Generate test cases from merged pull requests");
  cmd_cases->add_option("--repo", cases_repo, "GitHub URL or owner/name")->required();
  cmd_cases->add_option("--branch", cases_branch, "Base branch");
  cmd_cases->add_option("--cutoff", cases_cutoff, "Only PRs merged after this date (YYYY-MM-DD)")->required();
  cmd_cases->add_option("--out,-o", cases_out, "Output file (JSON lines)")->required();
  cmd_cases->add_option("--fixture", cases_fixture, "Read hosting data from an offline fixture")
      ->check(CLI::ExistingFile);
  cmd_cases->add_option("--record", cases_record, "Save the hosting data seen as a fixture");
  cmd_cases->add_option("--api-url", cases_api, "GitHub API base URL");

  // stats
  std::string stats_graph_file;
  auto* cmd_stats = app.add_subcommand("stats", "Print node and edge counts of a snapshot");
  cmd_stats->add_option("--graph,-g", stats_graph_file, "Snapshot file")->required()->check(CLI::ExistingFile);

  // serve
  std::string serve_host, serve_store;
  int serve_port = -1;
  auto* cmd_serve = app.add_subcommand("serve", "Run the HTTP service");
  cmd_serve->add_option("--host", serve_host, "Listen address");
  cmd_serve->add_option("--port", serve_port, "Listen port (0 = any)")->check(CLI::Range(0, 65535));
  cmd_serve->add_option("--store", serve_store, "Graph store directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    const ServiceConfig config = as_usage([&] { return load_service_config(g); });

    if (cmd_build->parsed()) {
      build.enrich = !build_no_enrich;
      if (build.graph_id) as_usage([&] { GraphStore::check_id(*build.graph_id); return 0; });
      const ProviderSet providers = make_providers(config);
      auto cache = open_cache(build_cache);
      json report;
      const auto t0 = std::chrono::steady_clock::now();
      const KnowledgeGraph graph = build_repository(build, config, providers, *cache, &report);
      report["build_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      save(graph, build_out);
      report["snapshot"] = build_out;
      const json st = stats_json(graph);
      report["content_hash"] = st["content_hash"];
      emit(g, report, "wrote " + build_out + "\n" + stats_table(st));
    } else if (cmd_update->parsed()) {
      update.enrich = !update_no_enrich;
      KnowledgeGraph graph = load_snapshot(update_graph_file);
      const ProviderSet providers = make_providers(config);
      auto cache = open_cache(update_cache);
      const json report = update_repository(graph, update, config, providers, *cache);
      const std::string out = update_out.empty() ? update_graph_file : update_out;
      save(graph, out);
      std::ostringstream human;
      human << "updated " << out << " to " << graph.meta().revision << ": " << report["files_added"].size()
            << " added, " << report["files_changed"].size() << " changed, " << report["files_removed"].size()
            << " removed\n";
      emit(g, report, human.str());
    } else if (cmd_enrich->parsed()) {
      KnowledgeGraph graph = load_snapshot(enrich_graph_file);
      const ProviderSet providers = make_providers(config);
      auto cache = open_cache(enrich_cache);
      const json report = enrich_repository(graph, providers, *cache, enrich_all ? EnrichScope::All : EnrichScope::StaleOnly,
                                            config.enrich_max_in_flight);
      const std::string out = enrich_out.empty() ? enrich_graph_file : enrich_out;
      save(graph, out);
      emit(g, report,
           "enriched " + std::to_string(report["nodes_enriched"].get<std::size_t>()) + " of " +
               std::to_string(report["nodes_in_scope"].get<std::size_t>()) + " nodes; " +
               std::to_string(report["failures"].size()) + " failures\n");
    } else if (cmd_search->parsed()) {
      const SearchRequest request = search_request(search_flags, config, true);
      const KnowledgeGraph graph = load_snapshot(search_graph_file);
      const ProviderSet providers = make_providers(config);
      const SearchResponse response = search_relevant(graph, request.retrieval, providers.search(request.use_llm));
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : response.results) {
        std::string prov;
        for (Stage s : r.provenance) prov += (prov.empty() ? "" : "+") + std::string(to_string(s));
        rows.push_back({std::to_string(r.rank), r.score ? fixed(*r.score, 4) : "-", r.path, prov});
      }
      std::string human = table({"rank", "score", "path", "stages"}, rows);
      for (const auto& w : response.stage_warnings) human += "warning: " + w + "\n";
      emit(g, search_response_json(graph, response), human);
    } else if (cmd_cluster->parsed()) {
      ClusteringDefaults d = config.clustering;
      if (!cluster_method.empty()) d.method = as_usage([&] { return parse_cluster_method(cluster_method); });
      if (cluster_seed) d.seed = *cluster_seed;
      if (cluster_resolution) d.resolution = *cluster_resolution;
      const KnowledgeGraph graph = load_snapshot(cluster_graph_file);
      const ProviderSet providers = make_providers(config);
      const LanguageModel* labeler = cluster_no_llm ? nullptr : providers.llm.get();
      const ClusterResult result = cluster_repository(graph, cluster_options(d, labeler));
      const json j = cluster_response_json(graph, result, labeler != nullptr);
      std::vector<std::vector<std::string>> rows;
      for (const auto& c : j["clusters"]) {
        const std::string label = c["label"].is_string() ? c["label"].get<std::string>() : "";
        std::string sample;
        for (std::size_t i = 0; i < c["files"].size() && i < 3; ++i)
          sample += (i ? ", " : "") + c["files"][i].get<std::string>();
        if (c["files"].size() > 3) sample += ", ...";
        rows.push_back({std::to_string(c["id"].get<int>()), label, std::to_string(c["files"].size()), sample});
      }
      std::string human = table({"cluster", "label", "files", "members"}, rows);
      human += "method " + std::string(to_string(result.assignment.method)) + ", quality " +
               fixed(result.quality.score, 4) + "\n";
      for (const auto& w : result.warnings) human += "warning: " + w + "\n";
      emit(g, j, human);
    } else if (cmd_eval->parsed()) {
      EvalOptions options;
      options.k = eval_k;
      options.beta = eval_beta;
      options.max_in_flight = eval_jobs;
      options.repository = eval_repository;
      options.languages = eval_languages;
      options.request = search_request(eval_flags, config, false).retrieval;
      const bool use_llm = !eval_flags.no_llm;
      const KnowledgeGraph graph = load_snapshot(eval_graph_file);
      const std::vector<TestCase> cases = load_test_cases(eval_cases_file);
      const ProviderSet providers = make_providers(config);
      const EvalReport report = run_eval(graph, cases, providers.search(use_llm), options);
      json j = report.to_json();
      std::string human = render_results_table({report});
      if (eval_latency) {
        const LatencyRow row = measure_latency(graph, cases, providers.search(use_llm), options);
        j["latency"] = row.to_json();
        human += "\n" + render_latency_table({row});
      }
      if (!eval_out.empty()) std::ofstream(eval_out) << j.dump(2) << "\n";
      if (report.failed_cases) human += std::to_string(report.failed_cases) + " cases failed\n";
      emit(g, j, human);
      if (report.test_cases == 0) {
        std::cerr << "error: no test case could be evaluated\n";
        return kFailure;
      }
    } else if (cmd_cases->parsed()) {
      RepoRef ref;
      ref.url_or_path = cases_repo;
      const std::string cutoff = as_usage([&] { return normalize_timestamp(cases_cutoff); });
      std::unique_ptr<HostClient> host;
      if (!cases_fixture.empty()) {
        host = std::make_unique<OfflineHostClient>(OfflineHostClient::load(cases_fixture));
      } else {
        GitHubOptions gh;
        if (!cases_api.empty()) gh.api_url = cases_api;
        if (const char* t = std::getenv("GITHUB_TOKEN")) gh.token = t;
        host = std::make_unique<GitHubClient>(gh);
      }
      RecordingHostClient recorder(*host);
      const GenerationReport report = generate_test_cases(ref, cases_branch, cutoff, recorder);
      save_test_cases(cases_out, report.cases);
      if (!cases_record.empty()) std::ofstream(cases_record) << recorder.fixture().dump(2) << "\n";
      std::string human = "wrote " + std::to_string(report.cases.size()) + " cases to " + cases_out + "; skipped " +
                          std::to_string(report.skipped.size()) + " pull requests\n";
      for (const auto& e : report.errors) human += "error: " + e + "\n";
      emit(g, report.to_json(), human);
      if (!report.errors.empty()) return kFailure;
    } else if (cmd_stats->parsed()) {
      const KnowledgeGraph graph = load_snapshot(stats_graph_file);
      const json st = stats_json(graph);
      emit(g, st, stats_table(st));
    } else if (cmd_serve->parsed()) {
      ServiceConfig c = config;
      if (!serve_host.empty()) c.host = serve_host;
      if (serve_port >= 0) c.port = serve_port;
      if (!serve_store.empty()) c.store_dir = serve_store;
      const std::string host = c.host;
      const int port = c.port;
      ProviderSet providers = make_providers(c);
      Service service(std::move(c), std::move(providers));
      int bound = port;
      if (port == 0)
        bound = service.bind_any_port(host);
      else
        service.bind(host, port);
      std::cerr << "listening on http://" << host << ":" << bound << "\n";
      if (g.json_output) std::cout << json{{"host", host}, {"port", bound}}.dump() << std::endl;
      static Service* running = &service;
      auto on_signal = [](int) {
        running->stop();
      };
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      service.serve();
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error (" << error_kind(e) << "): " << e.what() << "\n";
    return kFailure;
  }
  return 0;
}
