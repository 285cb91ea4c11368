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

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "poetry_fixture.hpp"
#include "repograph/core/digest.hpp"
#include "repograph/core/error.hpp"
#include "repograph/enrich/enrich.hpp"
#include "repograph/enrich/http_providers.hpp"
#include "repograph/enrich/prompts.hpp"
#include "repograph/enrich/stub_providers.hpp"
#include "repograph/ingest/builder.hpp"
#include "repograph/ingest/update.hpp"
#include "temp_repo.hpp"

using namespace repograph;
using repograph::testing::TempRepo;

namespace {

// Reference FNV-1a 64 over raw bytes.
std::uint64_t ref_fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Independent evaluation of the bag-of-hashed-tokens cosine for seed 0.
double ref_stub_cosine(const std::vector<std::string>& a, const std::vector<std::string>& b, int dim) {
  std::vector<double> va(dim, 0.0), vb(dim, 0.0);
  const std::string seed(8, '\0');
  for (const auto& t : a) va[ref_fnv1a(seed + t) % dim] += 1;
  for (const auto& t : b) vb[ref_fnv1a(seed + t) % dim] += 1;
  double dot = 0, na = 0, nb = 0;
  for (int i = 0; i < dim; ++i) {
    dot += va[i] * vb[i];
    na += va[i] * va[i];
    nb += vb[i] * vb[i];
  }
  return dot / std::sqrt(na * nb);
}

double dot(const Embedding& a, const Embedding& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += static_cast<double>(a.values()[i]) * b.values()[i];
  return s;
}

class CountingSummarizer final : public Summarizer {
 public:
  std::string identity() const override { return inner.identity(); }
  std::string summarize(const SummaryRequest& r) const override {
    std::lock_guard lock(mu);
    ++calls;
    paths.insert(r.path);
    if (fail_path && r.path == *fail_path) throw ProviderError("summarizer unavailable");
    return inner.summarize(r);
  }
  StubSummarizer inner;
  std::optional<std::string> fail_path;
  mutable std::mutex mu;
  mutable int calls = 0;
  mutable std::set<std::string> paths;
};

class CountingEmbedder final : public Embedder {
 public:
  explicit CountingEmbedder(int dim = kStubEmbeddingDim, int returned_dim = 0)
      : inner(dim), returned_dim(returned_dim) {}
  std::string identity() const override { return inner.identity(); }
  int dim() const override { return inner.dim(); }
  std::vector<Embedding> embed(const std::vector<std::string>& texts) const override {
    ++calls;
    if (returned_dim) return StubEmbedder(returned_dim).embed(texts);
    return inner.embed(texts);
  }
  StubEmbedder inner;
  int returned_dim;
  mutable std::atomic<int> calls{0};
};

KnowledgeGraph three_node_graph() {
  KnowledgeGraph g;
  Node root;
  root.kind = NodeKind::Root;
  root.name = "demo";
  const NodeId r = g.upsert_node(root);
  Node folder;
  folder.kind = NodeKind::Folder;
  folder.name = "console";
  folder.path = "src/console";
  folder.parent = r;
  const NodeId f = g.upsert_node(folder);
  g.add_edge(r, f, EdgeKind::Contains);
  Node file;
  file.kind = NodeKind::File;
  file.name = "new.py";
  file.path = "src/console/new.py";
  file.parent = f;
  file.language = "Python";
  file.raw_content = "def handle():\n    \"\"\"Create a new project.\"\"\"\n";
  file.size_bytes = file.raw_content->size();
  const NodeId fi = g.upsert_node(file);
  g.add_edge(f, fi, EdgeKind::Contains);
  Node fn;
  fn.kind = NodeKind::Function;
  fn.name = "handle";
  fn.qualified_name = "handle";
  fn.path = file.path;
  fn.parent = fi;
  fn.signature = "def handle()";
  fn.docstring = "Create a new project.";
  fn.raw_content = *file.raw_content;
  fn.line_span = LineSpan{1, 2};
  const NodeId fid = g.upsert_node(fn);
  g.add_edge(fi, fid, EdgeKind::Implements);
  return g;
}

void check_embedding_invariants(const KnowledgeGraph& g) {
  for (const auto& [id, n] : g.nodes())
    for (const auto* e : {&n.description_embedding, &n.code_embedding})
      if (*e) {
        CHECK(static_cast<int>((*e)->dim()) == g.meta().embedding_dim);
        CHECK(std::abs(std::sqrt(dot(**e, **e)) - 1.0) <= 1e-6);
      }
}

}  // namespace

// ---------------------------------------------------------------- prompts

TEST_CASE("prompt templates share one instruction block") {
  const std::string block(prompts::instructions().substr(0, 40));
  SummaryRequest r;
  r.kind = NodeKind::Function;
  r.name = "handle";
  r.path = "a.py";
  r.content = "def handle(): {{not a placeholder}}";
  const std::string summary = r.prompt();
  CHECK(summary.find(block) == 0);
  CHECK(summary.find("Docstring: (none)") != std::string::npos);
  CHECK(summary.find("{{not a placeholder}}") != std::string::npos);  // values are not re-expanded
  const std::string query =
      prompts::render(prompts::preprocess_query_template(), {{"query", "fix crash"}, {"context", "demo"}});
  CHECK(query.find(block) == 0);
  CHECK(query.find("fix crash") != std::string::npos);
  CHECK(prompts::render(prompts::discover_files_template(), {{"query", "q"}, {"context", ""}}).find(block) == 0);
  CHECK_THROWS_AS(prompts::render("{{missing}}", {}), ValidationError);
  CHECK(prompts::version().size() == 12);
}

// ---------------------------------------------------------------- stubs

TEST_CASE("stub_summarize") {
  SummaryRequest fn;
  fn.kind = NodeKind::Function;
  fn.name = "handle";
  fn.path = "src/new.py";
  fn.docstring = "Create a new project.";
  CHECK(stub_summarize(fn) == "Create a new project.");
  fn.docstring = "Create a new\n    project. Then more.\n\n    Details.";
  CHECK(stub_summarize(fn) == "Create a new project.");
  fn.docstring = "No terminal stop\n\nsecond paragraph.";
  CHECK(stub_summarize(fn) == "No terminal stop");
  fn.docstring = "Version 1.2 is parsed. Rest.";
  CHECK(stub_summarize(fn) == "Version 1.2 is parsed.");
  SummaryRequest folder;
  folder.kind = NodeKind::Folder;
  folder.name = "console";
  folder.path = "src/console";
  CHECK(stub_summarize(folder) == "Folder console at src/console");
  CHECK(stub_summarize(folder) == stub_summarize(folder));
  folder.docstring = "   ";
  CHECK(stub_summarize(folder) == "Folder console at src/console");
}

TEST_CASE("stub_embed") {
  CHECK(ref_fnv1a("a") == 0xaf63dc4c8601ec8cull);  // published FNV-1a test vector
  for (const char* t : {"poetry", "new", "x", "handler"})
    CHECK(stub_bucket(t, 256) == ref_fnv1a(std::string(8, '\0') + t) % 256);

  const Embedding a = stub_embed("poetry new command");
  CHECK(a.dim() == 256u);
  CHECK(std::abs(dot(a, stub_embed("poetry new command")) - 1.0) <= 1e-6);
  CHECK(std::abs(dot(a, stub_embed("Poetry, NEW command!")) - 1.0) <= 1e-6);

  const auto disjoint = stub_embed("unrelated tokens entirely");
  std::set<std::size_t> ba, bb;
  for (const auto& t : stub_tokens("poetry new command")) ba.insert(stub_bucket(t, 256));
  for (const auto& t : stub_tokens("unrelated tokens entirely")) bb.insert(stub_bucket(t, 256));
  REQUIRE(std::none_of(ba.begin(), ba.end(), [&](std::size_t b) { return bb.count(b); }));
  CHECK(std::abs(dot(a, disjoint)) <= 1e-6);

  const double overlap = dot(a, stub_embed("new command handler"));
  CHECK(overlap > dot(a, disjoint));
  CHECK(overlap == doctest::Approx(ref_stub_cosine({"poetry", "new", "command"}, {"new", "command", "handler"}, 256))
                       .epsilon(1e-6));
  CHECK(overlap == doctest::Approx(2.0 / 3.0).epsilon(1e-6));

  CHECK_THROWS_AS(stub_embed(""), ValidationError);
  CHECK(stub_embed("...").dim() == 256u);  // no tokens: whole text is the token
  CHECK(stub_embed("a b", 64, 1) != stub_embed("a b", 64, 2));

  // Golden digest of the float bytes; the arithmetic is exact up to one sqrt.
  const auto v = stub_embed("def create_user(name): return User(name)");
  const std::string bytes(reinterpret_cast<const char*>(v.values().data()), v.dim() * sizeof(float));
  CHECK(sha256_hex(bytes) == "7c958c54fc9bbb60711237d8bf54c312282d6b7ec84333f0476f1d74b1589d6e");
  const StubEmbedder e(32);
  CHECK(e.embed({"a", "b c"}).size() == 2u);
  CHECK(e.embed({"a"})[0].dim() == 32u);
}

// ---------------------------------------------------------------- cache

TEST_CASE("enrichment cache") {
  SummaryRequest r;
  r.kind = NodeKind::File;
  r.name = "a.py";
  r.path = "a.py";
  r.content = "x = 1";
  const std::string k = EnrichCache::summary_key(r, "s1");
  CHECK(k.size() == 64u);
  CHECK(k == EnrichCache::summary_key(r, "s1"));
  CHECK(k != EnrichCache::summary_key(r, "s2"));
  SummaryRequest r2 = r;
  r2.content = "x = 2";
  CHECK(k != EnrichCache::summary_key(r2, "s1"));
  r2 = r;
  r2.docstring = "";
  CHECK(k != EnrichCache::summary_key(r2, "s1"));
  CHECK(EnrichCache::embedding_key("t", "e1") != EnrichCache::embedding_key("t", "e2"));

  const auto file = std::filesystem::temp_directory_path() / ("repograph-cache-" + std::to_string(::getpid()) + ".jsonl");
  std::filesystem::remove(file);
  {
    EnrichCache c(file);
    c.put({"k1", std::string("first"), {}});
    c.put({"k1", std::string("second"), {}});
    c.put({"k2", stub_embed("hello world"), {}});
    CHECK(c.description("k1") == "first");
    CHECK_FALSE(c.embedding("k1"));
    CHECK(c.embedding("k2") == stub_embed("hello world"));
    CHECK(c.size() == 2u);
  }
  {
    std::ofstream(file, std::ios::app) << "{\"key\":\"torn";
  }
  EnrichCache reloaded(file);
  CHECK(reloaded.size() == 2u);
  CHECK(reloaded.skipped_lines() == 1u);
  CHECK(reloaded.description("k1") == "first");
  CHECK(reloaded.embedding("k2") == stub_embed("hello world"));  // bit-exact
  std::filesystem::remove(file);
}

// ---------------------------------------------------------------- enrich_graph

TEST_CASE("enrich_graph: three nodes with stub providers") {
  KnowledgeGraph g = three_node_graph();
  EnrichCache cache;
  CountingSummarizer s;
  CountingEmbedder e;
  const EnrichReport rep = enrich_graph(g, s, e, cache);
  CHECK(rep.nodes_in_scope == 3u);
  CHECK(rep.nodes_enriched == 3u);
  CHECK(rep.failures.empty());
  CHECK(s.calls == 3);
  CHECK(g.meta().embedding_dim == 256);
  CHECK(g.meta().provider_fingerprint == provider_fingerprint(s, e));
  const Node& folder = g.at(*g.find_by_path("src/console"));
  CHECK(folder.description == "Folder console at src/console");
  CHECK(folder.description_embedding);
  CHECK_FALSE(folder.code_embedding);
  const Node& file = g.at(*g.find_by_path("src/console/new.py"));
  CHECK(file.description == "File new.py at src/console/new.py");
  CHECK(file.code_embedding == stub_embed(*file.raw_content));
  CHECK(file.description_embedding == stub_embed(*file.description));
  CHECK_FALSE(file.stale);
  for (const auto& [id, n] : g.nodes())
    if (n.kind == NodeKind::Function) CHECK(n.description == "Create a new project.");
  CHECK_FALSE(g.at(*g.root()).description_embedding);
  check_embedding_invariants(g);

  KnowledgeGraph again = three_node_graph();
  EnrichCache fresh;
  enrich_graph(again, StubSummarizer(), StubEmbedder(), fresh);
  CHECK(graphs_equal(g, again, true));
}

TEST_CASE("enrich_graph: cache soundness and stale-only scope") {
  KnowledgeGraph g = testing::poetry_fixture();
  EnrichCache cache;
  CountingSummarizer s;
  CountingEmbedder e;
  enrich_graph(g, s, e, cache, {EnrichScope::All, 4, 16000});
  check_embedding_invariants(g);
  for (const auto& [id, n] : g.nodes()) {
    if (n.kind == NodeKind::Root) continue;
    CHECK(n.description);
    CHECK(n.description_embedding);
    CHECK(n.code_embedding.has_value() == (n.kind != NodeKind::Folder && n.raw_content.has_value()));
  }
  const int calls = s.calls;
  CHECK(calls == static_cast<int>(g.node_count() - 1));

  s.calls = 0;
  e.calls = 0;
  const EnrichReport stale_only = enrich_graph(g, s, e, cache);
  CHECK(stale_only.nodes_in_scope == 0u);
  CHECK(s.calls == 0);
  CHECK(e.calls == 0);

  const KnowledgeGraph first = g;
  const EnrichReport all = enrich_graph(g, s, e, cache, {EnrichScope::All, 4, 16000});
  CHECK(all.nodes_in_scope == g.node_count() - 1);
  CHECK(all.cache_hits > 0u);
  CHECK(s.calls == 0);
  CHECK(e.calls == 0);
  CHECK(graphs_equal(g, first, true));
}

TEST_CASE("enrich_graph: concurrency does not change the result") {
  KnowledgeGraph a = testing::poetry_fixture();
  KnowledgeGraph b = a;
  EnrichCache ca, cb;
  enrich_graph(a, StubSummarizer(), StubEmbedder(), ca, {EnrichScope::All, 1, 16000});
  enrich_graph(b, StubSummarizer(), StubEmbedder(), cb, {EnrichScope::All, 8, 16000});
  CHECK(graphs_equal(a, b, true));
}

TEST_CASE("enrich_graph: provider failure marks the node and continues") {
  KnowledgeGraph g = three_node_graph();
  EnrichCache cache;
  CountingSummarizer s;
  s.fail_path = "src/console";
  const EnrichReport rep = enrich_graph(g, s, StubEmbedder(), cache);
  REQUIRE(rep.failures.size() == 1u);
  CHECK(rep.failures[0].path == "src/console");
  CHECK(rep.failures[0].error.find("unavailable") != std::string::npos);
  CHECK(rep.nodes_enriched == 2u);
  const Node& folder = g.at(*g.find_by_path("src/console"));
  CHECK(folder.enrichment_failed);
  CHECK(folder.stale);
  CHECK_FALSE(folder.description);
  CHECK(g.at(*g.find_by_path("src/console/new.py")).description);

  s.fail_path.reset();
  s.calls = 0;
  const EnrichReport retry = enrich_graph(g, s, StubEmbedder(), cache);
  CHECK(retry.nodes_in_scope == 1u);
  CHECK(s.calls == 1);
  CHECK_FALSE(g.at(*g.find_by_path("src/console")).enrichment_failed);
  CHECK(rep.to_json()["failures"].size() == 1u);
}

TEST_CASE("enrich_graph: dimension mismatch is a hard error") {
  KnowledgeGraph g = three_node_graph();
  g.set_embedding_dim(128);
  EnrichCache cache;
  CountingSummarizer s;
  const KnowledgeGraph before = g;
  CHECK_THROWS_AS(enrich_graph(g, s, StubEmbedder(256), cache), DimensionError);
  CHECK(s.calls == 0);
  CHECK(graphs_equal(g, before, true));

  KnowledgeGraph h = three_node_graph();
  const KnowledgeGraph h0 = h;
  CHECK_THROWS_AS(enrich_graph(h, s, CountingEmbedder(256, 64), cache), DimensionError);
  CHECK(graphs_equal(h, h0, true));
  CHECK(h.meta().embedding_dim == 0);
}

TEST_CASE("enrich_graph: after a one-file update only that file's nodes are re-enriched") {
  TempRepo repo("enrich-update");
  repo.write("pkg/a.py", "def f():\n    \"\"\"Do f.\"\"\"\n    return 1\n\ndef g():\n    return 2\n");
  repo.write("pkg/b.py", "def h():\n    return 3\n");
  repo.write("README.md", "# demo\n");
  const std::string c1 = repo.commit("c1");
  repo.write("pkg/a.py", "def f():\n    \"\"\"Do f.\"\"\"\n    return 1\n\ndef g():\n    return 22\n");
  const std::string c2 = repo.commit("c2");

  const auto adapters = AdapterRegistry::with_defaults();
  KnowledgeGraph g = build_graph(GitRepoSource(repo.dir(), c1), adapters);
  EnrichCache cache;
  enrich_graph(g, StubSummarizer(), StubEmbedder(), cache);
  const GitRepoSource src(repo.dir(), c2);
  update_graph(g, diff_revisions(src, c1, c2), src, adapters);

  CountingSummarizer s;
  EnrichCache empty;
  const EnrichReport rep = enrich_graph(g, s, StubEmbedder(), empty);
  CHECK(s.paths == std::set<std::string>{"pkg/a.py"});
  CHECK(rep.nodes_in_scope == 2u);  // the file and g(); f() is unchanged
  CHECK(s.calls == 2);
  for (const auto& [id, n] : g.nodes())
    if (n.kind != NodeKind::Root) CHECK_FALSE(n.stale);
}

// ---------------------------------------------------------------- HTTP providers

namespace {

struct MockProvider {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<int> requests{0};
  std::atomic<int> fail_first{0};
  std::atomic<int> status_on_fail{500};
  std::atomic<int> delay_ms{0};
  std::atomic<int> dim{8};
  std::mutex mu;
  nlohmann::json last_body;
  std::string last_auth;

  MockProvider() {
    auto gate = [this](const httplib::Request& req, httplib::Response& res) {
      const int n = ++requests;
      {
        std::lock_guard lock(mu);
        last_body = nlohmann::json::parse(req.body);
        last_auth = req.get_header_value("Authorization");
      }
      if (delay_ms) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms.load()));
      if (n <= fail_first) {
        res.status = status_on_fail;
        res.set_content("{\"error\":\"injected\"}", "application/json");
        return false;
      }
      return true;
    };
    server.Post("/v1/summarize", [this, gate](const httplib::Request& req, httplib::Response& res) {
      if (!gate(req, res)) return;
      const auto body = nlohmann::json::parse(req.body);
      res.set_content(nlohmann::json{{"description", "About " + body["name"].get<std::string>()}}.dump(),
                      "application/json");
    });
    server.Post("/v1/embed", [this, gate](const httplib::Request& req, httplib::Response& res) {
      if (!gate(req, res)) return;
      const auto body = nlohmann::json::parse(req.body);
      nlohmann::json vecs = nlohmann::json::array();
      for (std::size_t i = 0; i < body["texts"].size(); ++i) {
        std::vector<float> v(static_cast<std::size_t>(dim.load()), 0.0f);
        v[i % v.size()] = 3.0f;  // not normalized on purpose
        vecs.push_back(v);
      }
      res.set_content(nlohmann::json{{"vectors", vecs}, {"dim", dim.load()}}.dump(), "application/json");
    });
    server.Post("/v1/complete", [gate](const httplib::Request& req, httplib::Response& res) {
      if (!gate(req, res)) return;
      const auto body = nlohmann::json::parse(req.body);
      res.set_content(nlohmann::json{{"text", "LLM:" + body["input"].get<std::string>()}}.dump(), "application/json");
    });
    server.Post("/v1/broken", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("not json", "text/plain");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~MockProvider() {
    server.stop();
    thread.join();
  }

  HttpProviderOptions options() const {
    HttpProviderOptions o;
    o.base_url = "http://127.0.0.1:" + std::to_string(port);
    o.model = "mock";
    o.backoff_ms = 1;
    o.read_timeout_ms = 2000;
    return o;
  }
};

}  // namespace

TEST_CASE("http providers: wire protocol") {
  MockProvider mock;
  auto opts = mock.options();
  opts.api_key = "secret";
  const HttpSummarizer s(opts);
  SummaryRequest r;
  r.kind = NodeKind::Class;
  r.name = "Installer";
  r.path = "src/installer.py";
  r.docstring = "Installs.";
  r.content = "class Installer: ...";
  r.context = "Repository demo.";
  CHECK(s.summarize(r) == "About Installer");
  {
    std::lock_guard lock(mock.mu);
    CHECK(mock.last_body["kind"] == "Class");
    CHECK(mock.last_body["docstring"] == "Installs.");
    CHECK(mock.last_body["context"] == "Repository demo.");
    CHECK(mock.last_body["prompt"].get<std::string>().find("class Installer") != std::string::npos);
    CHECK(mock.last_auth == "Bearer secret");
  }
  CHECK(s.identity().find("mock") != std::string::npos);

  const HttpEmbedder e(opts, 8);
  const auto vecs = e.embed({"a", "b", "c"});
  REQUIRE(vecs.size() == 3u);
  CHECK(vecs[1].values()[1] == doctest::Approx(1.0));  // normalized on receipt
  CHECK(HttpLanguageModel(opts).complete({"preprocess_query", "p", "fix it"}) == "LLM:fix it");

  mock.dim = 4;
  CHECK_THROWS_AS(e.embed({"a"}), DimensionError);
  CHECK_THROWS_AS(post_json(opts, "/v1/broken", {}), ProviderError);
}

TEST_CASE("http providers: retries, status handling and timeouts") {
  MockProvider mock;
  auto opts = mock.options();
  opts.retries = 2;
  mock.fail_first = 2;
  CHECK(HttpLanguageModel(opts).complete({"t", "p", "x"}) == "LLM:x");
  CHECK(mock.requests == 3);

  mock.requests = 0;
  mock.fail_first = 3;
  CHECK_THROWS_AS(HttpLanguageModel(opts).complete({"t", "p", "x"}), ProviderError);
  CHECK(mock.requests == 3);

  mock.requests = 0;
  mock.fail_first = 1;
  mock.status_on_fail = 400;
  CHECK_THROWS_AS(HttpLanguageModel(opts).complete({"t", "p", "x"}), ProviderError);
  CHECK(mock.requests == 1);  // client errors are not retried

  mock.requests = 0;
  mock.fail_first = 0;
  mock.delay_ms = 600;
  opts.read_timeout_ms = 100;
  opts.retries = 1;
  CHECK_THROWS_AS(HttpLanguageModel(opts).complete({"t", "p", "x"}), ProviderError);
  CHECK(mock.requests == 2);
  mock.delay_ms = 0;

  opts.base_url = "http://127.0.0.1:1";
  opts.retries = 0;
  CHECK_THROWS_AS(HttpLanguageModel(opts).complete({"t", "p", "x"}), ProviderError);
  opts.base_url = "no-scheme";
  CHECK_THROWS_AS(HttpLanguageModel(opts).complete({"t", "p", "x"}), ValidationError);
}

TEST_CASE("http providers: failures surface as enrichment-failed") {
  MockProvider mock;
  auto opts = mock.options();
  opts.retries = 0;
  mock.fail_first = 1;
  KnowledgeGraph g = three_node_graph();
  EnrichCache cache;
  const EnrichReport rep = enrich_graph(g, HttpSummarizer(opts), HttpEmbedder(opts, 8), cache, {EnrichScope::All, 1, 16000});
  CHECK(rep.failures.size() == 1u);
  CHECK(rep.nodes_enriched == 2u);
  check_embedding_invariants(g);
}
