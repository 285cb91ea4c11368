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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "poetry_fixture.hpp"
#include "repograph/core/error.hpp"
#include "repograph/eval/harness.hpp"

using namespace repograph;
using namespace repograph::testing;

namespace {

std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i) + ".py");
  return out;
}

// Counts by explicit loops over the raw inputs, without the library helpers.
struct BruteForce {
  double recall_at_k, precision_at_k, recall, precision;
};
BruteForce brute_force(const std::vector<std::string>& list, const std::set<std::string>& rel, std::size_t k) {
  std::vector<std::string> uniq;
  for (const auto& p : list)
    if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);
  std::size_t top = 0, all = 0;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    const bool hit = rel.count(uniq[i]) > 0;
    all += hit;
    if (i < k) top += hit;
  }
  return {static_cast<double>(top) / static_cast<double>(rel.size()), static_cast<double>(top) / static_cast<double>(k),
          static_cast<double>(all) / static_cast<double>(rel.size()),
          uniq.empty() ? 0.0 : static_cast<double>(all) / static_cast<double>(uniq.size())};
}

Embedding vec(int dim, std::initializer_list<std::pair<int, float>> parts) {
  std::vector<float> v(static_cast<std::size_t>(dim), 0.0f);
  for (const auto& [i, x] : parts) v[static_cast<std::size_t>(i)] = x;
  return Embedding::normalized(std::move(v));
}

// Maps exact query texts to planted vectors.
class TableEmbedder : public Embedder {
 public:
  explicit TableEmbedder(int dim) : dim_(dim) {}
  std::map<std::string, Embedding> table;
  std::string identity() const override { return "table"; }
  int dim() const override { return dim_; }
  std::vector<Embedding> embed(const std::vector<std::string>& texts) const override {
    std::vector<Embedding> out;
    for (const auto& t : texts) {
      const auto it = table.find(t);
      if (it == table.end()) throw ProviderError("no planted vector for '" + t + "'");
      out.push_back(it->second);
    }
    return out;
  }

 private:
  int dim_;
};

struct Suite {
  KnowledgeGraph g;
  NodeId root;
  TableEmbedder embedder{32};

  Suite() {
    Node r;
    r.kind = NodeKind::Root;
    r.name = "suite";
    root = g.upsert_node(r);
  }

  NodeId file(const std::string& path, std::optional<Embedding> e) {
    Node n;
    n.kind = NodeKind::File;
    n.path = path;
    n.name = path.substr(path.rfind('/') + 1);
    n.parent = root;
    n.language = "Python";
    n.size_bytes = 0;
    n.description_embedding = std::move(e);
    const NodeId id = g.upsert_node(n);
    g.add_edge(root, id, EdgeKind::Contains);
    return id;
  }

  NodeId function(NodeId owner, const std::string& name, std::optional<Embedding> e) {
    Node n;
    n.kind = NodeKind::Function;
    n.name = name;
    n.qualified_name = name;
    n.path = g.at(owner).path;
    n.parent = owner;
    n.description_embedding = std::move(e);
    const NodeId id = g.upsert_node(n);
    g.add_edge(owner, id, EdgeKind::Implements);
    return id;
  }
};

TestCase make_case(const std::string& id, const std::string& text, std::set<std::string> truth) {
  TestCase c;
  c.repo.url_or_path = "suite";
  c.issue_id = id;
  c.issue_text = text;
  c.ground_truth = std::move(truth);
  c.pr_id = "pr" + id;
  return c;
}

EvalOptions plain_options(std::size_t k) {
  EvalOptions o;
  o.k = k;
  o.request.mode = PreprocessMode::None;
  o.request.enable_discovery = false;
  o.request.traversal = TraversalConfig::off();
  return o;
}

const char* kHostFixture = R"({
  "pull_requests": [
    {"number": 11, "title": "Fix parser", "body": "Fixes #1", "merged_at": "2025-02-01T10:00:00Z",
     "base": "main", "base_sha": "aaa", "files": ["src/parser.py", "tests/test_parser.py"]},
    {"number": 12, "title": "Cache", "body": "closes: #2\nSome notes", "merged_at": "2025-02-02T10:00:00Z",
     "base": "main", "base_sha": "bbb", "files": ["src/cache.py", "docs/cache.md"]},
    {"number": 13, "title": "Resolve #3", "body": "", "merged_at": "2025-02-03T10:00:00Z",
     "base": "main", "base_sha": "ccc", "files": ["./src/cli.py"]},
    {"number": 14, "title": "Two at once", "body": "Fixes #4 and resolves #5", "merged_at": "2025-02-04T10:00:00Z",
     "base": "main", "base_sha": "ddd", "files": ["src/a.py"]},
    {"number": 15, "title": "Docs", "body": "Fixes #6", "merged_at": "2025-02-05T10:00:00Z",
     "base": "main", "base_sha": "eee", "files": ["README.md"]},
    {"number": 16, "title": "Old", "body": "Fixes #7", "merged_at": "2024-12-01T10:00:00Z",
     "base": "main", "base_sha": "fff", "files": ["src/old.py"]},
    {"number": 17, "title": "Unmerged", "body": "Fixes #8", "merged_at": null,
     "base": "main", "base_sha": "ggg", "files": ["src/x.py"]},
    {"number": 18, "title": "Other branch", "body": "Fixes #9", "merged_at": "2025-02-06T10:00:00Z",
     "base": "dev", "base_sha": "hhh", "files": ["src/y.py"]},
    {"number": 19, "title": "Mentions only", "body": "Related to #10", "merged_at": "2025-02-07T10:00:00Z",
     "base": "main", "base_sha": "iii", "files": ["src/z.py"]}
  ],
  "issues": [
    {"number": 1, "title": "Parser crash", "body": "It crashes.", "created_at": "2025-01-20T00:00:00Z"},
    {"number": 2, "title": "Cache stale", "body": null, "created_at": "2025-01-21T00:00:00Z"},
    {"number": 3, "title": "CLI flag", "body": "Flag ignored", "created_at": "2025-01-22T00:00:00Z"},
    {"number": 4, "title": "A", "body": ""}, {"number": 5, "title": "B", "body": ""},
    {"number": 6, "title": "Docs typo", "body": ""}
  ]
})";

}  // namespace

TEST_CASE("metric examples") {
  const std::vector<std::string> same = {"a.py", "b.py"};
  CHECK(recall(same, {"a.py", "b.py"}) == 1.0);
  CHECK(precision(same, {"a.py", "b.py"}) == 1.0);
  CHECK(recall(same, {"c.py"}) == 0.0);
  CHECK(precision(same, {"c.py"}) == 0.0);

  // Twenty ranked files holding the four ground-truth files.
  std::vector<std::string> twenty = numbered("src/other", 16);
  for (std::size_t i = 0; i < kPoetryGroundTruth.size(); ++i)
    twenty.insert(twenty.begin() + static_cast<std::ptrdiff_t>(i * 5), kPoetryGroundTruth[i]);
  REQUIRE(twenty.size() == 20);
  const std::set<std::string> truth(kPoetryGroundTruth.begin(), kPoetryGroundTruth.end());
  CHECK(recall_at_k(twenty, truth, 20) == 1.0);
  CHECK(precision_at_k(twenty, truth, 20) == 0.2);

  // Ten retrieved, two of four relevant in the top ten.
  std::vector<std::string> ten = numbered("x", 8);
  ten.insert(ten.begin() + 2, "r0.py");
  ten.insert(ten.begin() + 7, "r1.py");
  const std::set<std::string> four = {"r0.py", "r1.py", "r2.py", "r3.py"};
  CHECK(recall_at_k(ten, four, 10) == 0.5);
  CHECK(precision_at_k(ten, four, 10) == 0.2);
  // k beyond the list: the denominator stays k.
  CHECK(precision_at_k(ten, four, 40) == 2.0 / 40.0);

  CHECK(fbeta(0.4, 0.4, 0.5) == doctest::Approx(0.4));
  CHECK(fbeta(0.4, 0.4, 7.0) == doctest::Approx(0.4));
  CHECK(fbeta(0.2, 1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // (1 + 9) * 0.02 / (9 * 0.02 + 1) = 0.2 / 1.18
  CHECK(fbeta(0.02, 1.0, 3.0) == doctest::Approx(0.2 / 1.18).epsilon(1e-12));
  CHECK(fbeta(0.0, 0.0, 3.0) == 0.0);

  CHECK_THROWS_AS(recall(same, {}), UndefinedMetricError);
  CHECK_THROWS_AS(precision({}, {"a.py"}), UndefinedMetricError);
  CHECK_THROWS_AS(recall_at_k(same, {"a.py"}, 0), UndefinedMetricError);
  CHECK_THROWS_AS(fbeta(0.5, 0.5, 0.0), UndefinedMetricError);
  CHECK_THROWS_AS(compute_metrics(same, {}, 5), UndefinedMetricError);

  // Duplicates count once and paths are normalized.
  CHECK(precision({"./a.py", "a.py", "b.py"}, {"a.py"}) == 0.5);
  CHECK(recall({"src\\a.py"}, {"src/a.py"}) == 1.0);
}

TEST_CASE("metrics equal brute-force set arithmetic") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::string> list;
    const std::size_t len = rng() % 51;
    for (std::size_t i = 0; i < len; ++i) list.push_back("f" + std::to_string(rng() % 80) + ".py");
    std::set<std::string> rel;
    const std::size_t nrel = 1 + rng() % 10;
    while (rel.size() < nrel) rel.insert("f" + std::to_string(rng() % 80) + ".py");
    const std::size_t k = 1 + rng() % 60;
    const auto bf = brute_force(list, rel, k);
    const auto m = compute_metrics(list, rel, k);
    CHECK(m.recall_at_k == bf.recall_at_k);
    CHECK(m.precision_at_k == bf.precision_at_k);
    CHECK(m.recall == bf.recall);
    CHECK(m.precision == bf.precision);
    CHECK(recall_at_k(list, rel, k) == bf.recall_at_k);
    CHECK(precision_at_k(list, rel, k) == bf.precision_at_k);
    if (!list.empty()) CHECK(precision(list, rel) == bf.precision);
  }
}

TEST_CASE("metric properties over random tuples") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> beta_dist(0.1, 10.0);
  for (int t = 0; t < 10000; ++t) {
    std::vector<std::string> list;
    const std::size_t len = rng() % 60;
    for (std::size_t i = 0; i < len; ++i) list.push_back("p" + std::to_string(rng() % 100));
    std::set<std::string> rel;
    const std::size_t nrel = 1 + rng() % 12;
    while (rel.size() < nrel) rel.insert("p" + std::to_string(rng() % 100));
    const std::size_t k = 1 + rng() % 70;
    const double beta = beta_dist(rng);
    const auto m = compute_metrics(list, rel, k, beta);
    for (double v : {m.recall, m.precision, m.recall_at_k, m.precision_at_k, m.fbeta_at_k}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(m.integral());
    CHECK(recall_at_k(list, rel, k + 1) >= m.recall_at_k);
    CHECK(recall_at_k(list, rel, list.size() + 1) == m.recall);
    if (m.precision_at_k > 0.0 && m.recall_at_k > 0.0) {
      CHECK(m.fbeta_at_k >= std::min(m.precision_at_k, m.recall_at_k) - 1e-12);
      CHECK(m.fbeta_at_k <= std::max(m.precision_at_k, m.recall_at_k) + 1e-12);
    }
    CHECK(m.found == (m.hits_at_k > 0));
  }
}

TEST_CASE("median") {
  CHECK(median({0.2, 0.5, 1.0}) == 0.5);
  CHECK(median({1.0, 0.2, 0.5, 0.4}) == doctest::Approx(0.45));
  CHECK_THROWS_AS(median({}), UndefinedMetricError);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> v(1 + rng() % 20);
    for (auto& x : v) x = static_cast<double>(rng() % 1000) / 1000.0;
    const double m = median(v);
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
    CHECK(median(v) == m);
  }
}

TEST_CASE("test case JSON Lines round trip") {
  TestCase c = make_case("42", "Crash\n\nDetails", {"src/a.py", "tests/test_a.py"});
  c.repo.revision = "abc";
  c.repo.branch = "main";
  c.created_at = "2025-01-01T00:00:00Z";
  const auto dir = std::filesystem::temp_directory_path() / "repograph_eval_cases";
  std::filesystem::create_directories(dir);
  const auto file = dir / "cases.jsonl";
  save_test_cases(file, {c, c});
  const auto back = load_test_cases(file);
  REQUIRE(back.size() == 2);
  CHECK(back[0].to_json() == c.to_json());
  std::filesystem::remove_all(dir);

  CHECK(TestCase::from_json(nlohmann::json::parse(
                                R"({"repo":"r","issue_id":7,"issue_text":"t","ground_truth":["./x.py"]})"))
            .ground_truth == std::set<std::string>{"x.py"});
  try {
    parse_test_cases("\n" + c.to_json().dump() + "\n{\"repo\":\"r\",\"issue_id\":\"1\",\"issue_text\":\"t\","
                     "\"ground_truth\":[]}\n", "cases.jsonl");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("cases.jsonl:3") != std::string::npos);
  }
}

TEST_CASE("closing keywords, slugs and timestamps") {
  CHECK(closing_issue_refs("Fixes #12") == std::vector<int>{12});
  CHECK(closing_issue_refs("this CLOSES: #3, also resolved #4") == std::vector<int>{3, 4});
  CHECK(closing_issue_refs("see #5; fixing #6 soon").empty());
  CHECK(closing_issue_refs("fixes owner/repo#7", "owner/repo") == std::vector<int>{7});
  CHECK(closing_issue_refs("fixes other/repo#7", "owner/repo").empty());
  CHECK(closing_issue_refs("Resolves https://github.com/Owner/Repo/issues/8", "owner/repo") == std::vector<int>{8});
  CHECK(closing_issue_refs("fixes #9 and fixes #9") == std::vector<int>{9});
  CHECK(github_slug("https://github.com/python-poetry/poetry.git") == "python-poetry/poetry");
  CHECK(github_slug("python-poetry/poetry") == "python-poetry/poetry");
  CHECK(github_slug("git@github.com:pallets/flask.git") == "pallets/flask");
  CHECK_THROWS_AS(github_slug("nope"), ValidationError);
  CHECK(normalize_timestamp("2025-01-02") == "2025-01-02T00:00:00Z");
  CHECK(normalize_timestamp("2025-01-02T03:04:05.123+00:00") == "2025-01-02T03:04:05Z");
  CHECK_THROWS_AS(normalize_timestamp("yesterday"), ValidationError);
}

TEST_CASE("generate_test_cases from an offline fixture") {
  const OfflineHostClient host(nlohmann::json::parse(kHostFixture));
  const RepoRef repo{"owner/repo", "", std::nullopt};
  const auto r = generate_test_cases(repo, "main", "2025-01-01", host);
  REQUIRE(r.cases.size() == 3);
  CHECK(r.cases[0].issue_id == "1");
  CHECK(r.cases[0].pr_id == "11");
  CHECK(r.cases[0].issue_text == "Parser crash\n\nIt crashes.");
  CHECK(r.cases[0].ground_truth == std::set<std::string>{"src/parser.py", "tests/test_parser.py"});
  CHECK(r.cases[0].repo.revision == "aaa");
  CHECK(r.cases[1].issue_text == "Cache stale");
  CHECK(r.cases[1].ground_truth == std::set<std::string>{"docs/cache.md", "src/cache.py"});
  CHECK(r.cases[2].ground_truth == std::set<std::string>{"src/cli.py"});
  std::map<int, std::string> skipped;
  for (const auto& s : r.skipped) skipped[s.number] = s.reason;
  CHECK(skipped.at(14) == "closes 2 issues");
  CHECK(skipped.at(15) == "touches no source files");
  CHECK(skipped.at(19) == "closes 0 issues");
  CHECK(skipped.count(16) == 0);  // before the cutoff
  CHECK(skipped.count(17) == 0);  // not merged
  CHECK(skipped.count(18) == 0);  // other branch
  CHECK(r.errors.empty());

  // An empty result is not an error.
  CHECK(generate_test_cases(repo, "main", "2030-01-01", host).cases.empty());
}

TEST_CASE("generate_test_cases: the Poetry pull request") {
  nlohmann::json fx = {
      {"pull_requests",
       {{{"number", 10431},
         {"title", "Make `poetry new .` create the project layout"},
         {"body", "Resolves: #10429"},
         {"merged_at", "2025-06-10T12:00:00Z"},
         {"base", "main"},
         {"base_sha", kPoetryRevision},
         {"files", kPoetryGroundTruth}}}},
      {"issues", {{{"number", 10429}, {"title", "poetry new . only runs init"}, {"body", "No layout is created."}}}}};
  const OfflineHostClient host(fx);
  const auto r = generate_test_cases({"https://github.com/python-poetry/poetry", "", std::nullopt}, "main",
                                     "2025-06-01", host);
  REQUIRE(r.cases.size() == 1);
  const auto& gt = r.cases[0].ground_truth;
  CHECK(gt.size() == 4);
  CHECK(gt.count("src/poetry/console/commands/new.py") == 1);
  CHECK(r.cases[0].issue_id == "10429");
  CHECK(r.cases[0].pr_id == "10431");
}

namespace {

struct MockGitHub {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<int> requests{0};
  std::atomic<bool> fail_files{false};
  std::string auth;

  MockGitHub() {
    server.Get("/api/repos/owner/repo/pulls", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests;
      auth = req.get_header_value("Authorization");
      const int page = std::stoi(req.get_param_value("page"));
      nlohmann::json items = nlohmann::json::array();
      if (page == 1) {
        items.push_back({{"number", 3}, {"title", "t3"}, {"body", "Fixes #30"}, {"merged_at", "2025-03-03T00:00:00Z"},
                         {"updated_at", "2025-03-03T00:00:00Z"}, {"base", {{"ref", "main"}, {"sha", "s3"}}}});
        items.push_back({{"number", 2}, {"title", "t2"}, {"body", "Fixes #20"}, {"merged_at", nullptr},
                         {"updated_at", "2025-03-02T00:00:00Z"}, {"base", {{"ref", "main"}, {"sha", "s2"}}}});
      } else if (page == 2) {
        items.push_back({{"number", 1}, {"title", "t1"}, {"body", "closes #10"}, {"merged_at", "2025-03-01T00:00:00Z"},
                         {"updated_at", "2025-03-01T00:00:00Z"}, {"base", {{"ref", "main"}, {"sha", "s1"}}}});
      }
      res.set_content(items.dump(), "application/json");
    });
    server.Get(R"(/api/repos/owner/repo/pulls/(\d+)/files)", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests;
      if (fail_files && req.matches[1] == "1") {
        res.status = 500;
        return;
      }
      const std::string n = req.matches[1];
      if (req.get_param_value("page") != "1") {
        res.set_content("[]", "application/json");
        return;
      }
      res.set_content(nlohmann::json::array({{{"filename", "src/m" + n + ".py"}}, {{"filename", "docs/d.md"}}}).dump(),
                      "application/json");
    });
    server.Get(R"(/api/repos/owner/repo/issues/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests;
      const std::string n = req.matches[1];
      if (n == "404") {
        res.status = 404;
        return;
      }
      res.set_content(nlohmann::json{{"number", std::stoi(n)}, {"title", "Issue " + n}, {"body", "Body " + n},
                                     {"created_at", "2025-02-01T00:00:00Z"}}
                          .dump(),
                      "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~MockGitHub() {
    server.stop();
    thread.join();
  }

  GitHubOptions options() const {
    GitHubOptions o;
    o.api_url = "http://127.0.0.1:" + std::to_string(port) + "/api";
    o.token = "tok";
    o.per_page = 2;
    o.timeout_ms = 2000;
    return o;
  }
};

}  // namespace

TEST_CASE("GitHub client against a mock API") {
  MockGitHub mock;
  const GitHubClient gh(mock.options());
  const auto prs = gh.merged_pull_requests("https://github.com/owner/repo", "main", "2025-01-01");
  REQUIRE(prs.size() == 2);
  CHECK(prs[0].number == 1);
  CHECK(prs[1].number == 3);
  CHECK(prs[1].base_sha == "s3");
  CHECK(mock.auth == "Bearer tok");
  CHECK(gh.pull_request_files("owner/repo", 3) == std::vector<std::string>{"src/m3.py", "docs/d.md"});
  CHECK(gh.issue("owner/repo", 10)->title == "Issue 10");
  CHECK_FALSE(gh.issue("owner/repo", 404).has_value());

  RecordingHostClient rec(gh);
  const RepoRef repo{"owner/repo", "", std::nullopt};
  const auto live = generate_test_cases(repo, "main", "2025-01-01", rec);
  REQUIRE(live.cases.size() == 2);
  CHECK(live.cases[0].ground_truth == std::set<std::string>{"docs/d.md", "src/m1.py"});
  CHECK(live.cases[1].issue_text == "Issue 30\n\nBody 30");

  // The recording replays offline to the same cases.
  const OfflineHostClient offline(rec.fixture());
  const auto replay = generate_test_cases(repo, "main", "2025-01-01", offline);
  REQUIRE(replay.cases.size() == live.cases.size());
  for (std::size_t i = 0; i < replay.cases.size(); ++i) CHECK(replay.cases[i].to_json() == live.cases[i].to_json());

  // A host failure on one pull request keeps the other cases.
  mock.fail_files = true;
  const auto partial = generate_test_cases(repo, "main", "2025-01-01", gh);
  CHECK(partial.cases.size() == 1);
  REQUIRE(partial.errors.size() == 1);
  CHECK(partial.errors[0].find("#1") != std::string::npos);

  // Unreachable host: error log, no cases.
  GitHubOptions dead = mock.options();
  dead.api_url = "http://127.0.0.1:1/api";
  const auto none = generate_test_cases(repo, "main", "", GitHubClient(dead));
  CHECK(none.cases.empty());
  CHECK(none.errors.size() == 1);
}

TEST_CASE("run_eval on a planted suite matches hand-computed medians") {
  Suite s;
  for (int i = 0; i < 10; ++i) s.file("f" + std::to_string(i) + ".py", vec(32, {{i, 1.0f}}));
  s.embedder.table["q1"] = vec(32, {{0, 3.0f}, {1, 2.0f}, {2, 1.0f}});
  s.embedder.table["q2"] = vec(32, {{3, 3.0f}, {4, 2.0f}, {5, 1.0f}});
  s.embedder.table["q3"] = vec(32, {{6, 3.0f}, {7, 2.0f}, {8, 1.0f}});
  const std::vector<TestCase> cases = {
      make_case("1", "q1", {"f0.py"}),                              // top2 f0 f1: R 1, P .5
      make_case("2", "q2", {"f4.py", "f9.py"}),                     // top2 f3 f4: R .5, P .5
      make_case("3", "q3", {"f0.py", "f1.py", "f2.py", "f3.py"}),   // top2 f6 f7: R 0, P 0
      make_case("4", "boom", {"f0.py"}),                            // embedder failure
  };
  auto opt = plain_options(2);
  opt.repository = "suite";
  const SearchProviders providers{&s.embedder, nullptr};
  for (std::size_t threads : {1u, 3u}) {
    opt.max_in_flight = threads;
    const auto r = run_eval(s.g, cases, providers, opt);
    CHECK(r.test_cases == 3);
    CHECK(r.failed_cases == 1);
    CHECK(r.cases[3].error.has_value());
    CHECK(r.cases[0].retrieved == std::vector<std::string>{"f0.py", "f1.py"});
    CHECK(r.cases[1].retrieved == std::vector<std::string>{"f3.py", "f4.py"});
    CHECK(r.median_recall_at_k == 0.5);
    CHECK(r.median_precision_at_k == 0.5);
    // F3 per case: 10*.5*1/(4.5+1), 0.5, 0
    CHECK(r.cases[0].metrics->fbeta_at_k == doctest::Approx(5.0 / 5.5).epsilon(1e-12));
    CHECK(r.median_fbeta_at_k == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.percentage_found == doctest::Approx(200.0 / 3.0));
    CHECK(r.files_total == 10);
    CHECK(r.files_returned == 2);
    CHECK(r.pct_files_returned == doctest::Approx(20.0));
    CHECK(r.languages == "Python");
    CHECK(r.to_json().at("cases").size() == 4);
  }

  // One perfect case gives medians of 1.
  const auto perfect = run_eval(s.g, {make_case("p", "q1", {"f0.py", "f1.py"})}, providers, plain_options(2));
  CHECK(perfect.median_recall_at_k == 1.0);
  CHECK(perfect.median_precision_at_k == 1.0);
  CHECK(perfect.median_fbeta_at_k == 1.0);
  CHECK_THROWS_AS(run_eval(s.g, {}, providers, plain_options(2)), ValidationError);
}

TEST_CASE("ab_compare: identical configs, discovery and traversal directions") {
  Suite s;
  // Ten files whose embeddings never match the issue texts, plus function-level chains.
  for (int i = 0; i < 10; ++i) s.file("pkg/mod" + std::to_string(i) + ".py", vec(32, {{10 + i, 1.0f}}));
  std::vector<TestCase> mention_cases, chain_cases;
  for (int i = 0; i < 5; ++i) {
    const std::string text = "Traceback in pkg/mod" + std::to_string(i) + ".py while saving item " + std::to_string(i);
    s.embedder.table[text] = vec(32, {{10 + ((i + 5) % 10), 1.0f}});  // points at a different file
    mention_cases.push_back(make_case("m" + std::to_string(i), text, {"pkg/mod" + std::to_string(i) + ".py"}));
  }
  for (int i = 0; i < 4; ++i) {
    // callee in lib/callee_i.py matches the query; its caller lives in zz/caller_i.py,
    // which sorts after every zero-score file.
    const NodeId callee_file = s.file("lib/callee" + std::to_string(i) + ".py", vec(32, {{24 + i, 1.0f}}));
    const NodeId caller_file = s.file("zz/caller" + std::to_string(i) + ".py", vec(32, {{30, 1.0f}}));
    const NodeId callee = s.function(callee_file, "work" + std::to_string(i), vec(32, {{i, 1.0f}}));
    const NodeId caller = s.function(caller_file, "run" + std::to_string(i), vec(32, {{31, 1.0f}}));
    s.g.add_edge(caller, callee, EdgeKind::Calls);
    const std::string text = "work" + std::to_string(i) + " fails";
    s.embedder.table[text] = vec(32, {{i, 1.0f}});
    chain_cases.push_back(make_case("c" + std::to_string(i), text,
                                    {"lib/callee" + std::to_string(i) + ".py", "zz/caller" + std::to_string(i) + ".py"}));
  }
  const SearchProviders providers{&s.embedder, nullptr};

  const auto base = plain_options(3);
  const auto same = ab_compare(s.g, mention_cases, providers, base, base);
  for (const auto& d : same.deltas) {
    CHECK(d.recall_at_k == 0.0);
    CHECK(d.precision_at_k == 0.0);
    CHECK(d.fbeta_at_k == 0.0);
  }

  auto with_discovery = base;
  with_discovery.request.enable_discovery = true;
  const auto disc = ab_compare(s.g, mention_cases, providers, base, with_discovery, "Without discovery",
                               "With discovery");
  CHECK(disc.b.median_recall_at_k > disc.a.median_recall_at_k);
  CHECK(disc.median_delta_recall_at_k > 0.0);
  const std::string table = disc.render();
  CHECK(table.find("Without discovery") != std::string::npos);
  CHECK(table.find("Median Recall@3") != std::string::npos);

  const auto semantic_only = plain_options(2);
  auto with_traversal = semantic_only;
  with_traversal.request.traversal = TraversalConfig{};
  const auto trav =
      ab_compare(s.g, chain_cases, providers, semantic_only, with_traversal, "Semantic only", "With traversal");
  CHECK(trav.b.median_recall_at_k >= trav.a.median_recall_at_k);
  for (const auto& d : trav.deltas) CHECK(d.recall_at_k >= 0.0);
  CHECK(trav.a.median_recall_at_k == 0.5);
  CHECK(trav.b.median_recall_at_k == 1.0);
  CHECK_THROWS_AS(ab_compare(s.g, chain_cases, providers, base, plain_options(4)), ValidationError);
}

TEST_CASE("report tables use the fixed column sets") {
  CHECK(results_table_columns(50) ==
        std::vector<std::string>{"Repository", "Languages", "Test cases", "Files total", "Files returned",
                                 "% Files returned", "Median Recall@50", "Median Precision@50", "Median Fβ@50"});
  CHECK(results_table_columns(10)[6] == "Median Recall@10");
  CHECK(latency_table_columns() ==
        std::vector<std::string>{"Repository", "Languages", "Nodes total", "Relationships total",
                                 "Graph creation time with cache, s", "Query time with LLM, s",
                                 "Query time without LLM, s"});
  EvalReport r;
  r.repository = "Poetry";
  r.languages = "Python";
  r.test_cases = 48;
  r.files_total = 893;
  r.files_returned = 50;
  r.pct_files_returned = 100.0 * 50 / 893;
  r.k = 50;
  r.median_recall_at_k = 1.0;
  r.median_precision_at_k = 0.02;
  r.median_fbeta_at_k = 0.9271;
  const std::string t = render_results_table({r});
  CHECK(t.find("Median Fβ@50") != std::string::npos);
  CHECK(t.find("Poetry") != std::string::npos);
  CHECK(t.find("5.6%") != std::string::npos);
  CHECK(t.find("| 0.927") != std::string::npos);
  CHECK(t.find("| 0.02 ") != std::string::npos);

  LatencyRow row;
  row.repository = "Flask";
  row.nodes = 1578;
  row.relationships = 5983;
  row.query_without_llm_seconds = 0.4;
  const std::string lt = render_latency_table({row});
  CHECK(lt.find("Query time without LLM, s") != std::string::npos);
  CHECK(lt.find("0.40") != std::string::npos);
}

TEST_CASE("measure_latency runs without LLM stages") {
  Suite s;
  for (int i = 0; i < 5; ++i) s.file("f" + std::to_string(i) + ".py", vec(32, {{i, 1.0f}}));
  s.embedder.table["q"] = vec(32, {{0, 1.0f}});
  const auto row = measure_latency(s.g, {make_case("1", "q", {"f0.py"})}, {&s.embedder, nullptr}, plain_options(2), 1.5);
  CHECK(row.nodes == 6);
  CHECK(row.relationships == 5);
  CHECK(row.build_seconds == 1.5);
  CHECK_FALSE(row.query_with_llm_seconds.has_value());
  CHECK(row.query_without_llm_seconds >= 0.0);
}
