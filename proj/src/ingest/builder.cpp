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

#include "repograph/ingest/builder.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "repograph/core/digest.hpp"
#include "repograph/core/error.hpp"
#include "repograph/core/file_types.hpp"

namespace repograph {

nlohmann::json IngestDiagnostics::to_json() const {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : parse_failures) failures.push_back({{"path", f.path}, {"error", f.error}});
  nlohmann::json unresolved = nlohmann::json::object();
  for (auto k : {EdgeKind::Calls, EdgeKind::Inherits, EdgeKind::Refers}) {
    const auto it = unresolved_relations.find(k);
    unresolved[std::string(to_string(k))] = it == unresolved_relations.end() ? 0 : it->second;
  }
  return {{"parse_failures", failures}, {"unresolved_relations", unresolved}, {"warnings", warnings}};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) return out;
    pos = next + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::size_t from, std::size_t to, char sep) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += sep;
    out += parts[i];
  }
  return out;
}

void warn(IngestDiagnostics* d, std::string msg) {
  if (d) d->warnings.push_back(std::move(msg));
}

void count_unresolved(IngestDiagnostics* d, EdgeKind k) {
  if (d) ++d->unresolved_relations[k];
}

std::string stem_of(const std::string& path) {
  const std::string base(basename_of(path));
  const std::size_t dot = base.rfind('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

}  // namespace

namespace detail {

NodeId ensure_folder(KnowledgeGraph& graph, const std::string& path) {
  if (path.empty()) return *graph.root();
  if (auto id = graph.find_by_path(path)) return *id;
  const NodeId parent = ensure_folder(graph, std::string(dirname_of(path)));
  Node n;
  n.kind = NodeKind::Folder;
  n.path = path;
  n.name = std::string(basename_of(path));
  n.parent = parent;
  const NodeId id = graph.upsert_node(std::move(n));
  graph.add_edge(parent, id, EdgeKind::Contains);
  touch_folder(graph, parent);
  return id;
}

void touch_folder(KnowledgeGraph& graph, NodeId folder) {
  if (graph.at(folder).kind != NodeKind::Folder) return;
  graph.modify_node(folder, [](Node& p) {
    p.stale = true;
    p.description.reset();
    p.description_embedding.reset();
    p.code_embedding.reset();
    p.enrichment_failed = false;
  });
}

void prune_empty_folders(KnowledgeGraph& graph, std::string path) {
  while (!path.empty()) {
    const auto id = graph.find_by_path(path);
    if (!id) return;
    const bool has_child = std::any_of(graph.out_edges(*id).begin(), graph.out_edges(*id).end(),
                                       [](const Edge& e) { return e.kind == EdgeKind::Contains; });
    if (has_child) return;
    graph.remove_node(*id);
    path = std::string(dirname_of(path));
    if (const auto parent = path.empty() ? graph.root() : graph.find_by_path(path)) touch_folder(graph, *parent);
  }
}

std::vector<NodeId> entity_subtree(const KnowledgeGraph& graph, NodeId file) {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{file};
  std::set<NodeId> seen{file};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    for (const Edge& e : graph.out_edges(cur)) {
      if (e.kind != EdgeKind::Implements && !(e.kind == EdgeKind::Contains && graph.at(cur).kind == NodeKind::File))
        continue;
      if (!is_entity(graph.at(e.dst).kind) || !seen.insert(e.dst).second) continue;
      out.push_back(e.dst);
      stack.push_back(e.dst);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void apply_entities(KnowledgeGraph& graph, NodeId file, const ParsedFile& parsed) {
  const std::string path = graph.at(file).path;
  const std::vector<NodeId> before = entity_subtree(graph, file);
  std::set<NodeId> keep;
  std::vector<NodeId> ids(parsed.entities.size());
  for (std::size_t i = 0; i < parsed.entities.size(); ++i) {
    const ParsedEntity& e = parsed.entities[i];
    Node n;
    n.kind = e.kind;
    n.name = e.name;
    n.path = path;
    n.qualified_name = e.qualified_name;
    n.parent = e.parent ? ids[*e.parent] : file;
    if (is_callable(e.kind)) n.signature = e.signature;
    n.docstring = e.docstring;
    n.raw_content = e.raw_content;
    n.line_span = e.line_span;
    const NodeId id = KnowledgeGraph::identity_of(n);
    if (const Node* old = graph.find(id)) {
      const bool same = old->signature == n.signature && old->docstring == n.docstring &&
                        old->raw_content == n.raw_content && !old->parse_failed;
      if (same) {
        n.description = old->description;
        n.description_embedding = old->description_embedding;
        n.code_embedding = old->code_embedding;
        n.stale = old->stale;
        n.enrichment_failed = old->enrichment_failed;
      }
      if (same && old->line_span == n.line_span) {
        ids[i] = id;
        keep.insert(id);
        continue;
      }
    }
    ids[i] = graph.upsert_node(std::move(n));
    keep.insert(ids[i]);
    graph.add_edge(graph.at(ids[i]).parent, ids[i], EdgeKind::Implements);
  }
  // Children first so that removal never strands a member.
  for (auto it = before.rbegin(); it != before.rend(); ++it)
    if (!keep.count(*it) && graph.contains(*it)) graph.remove_node(*it);
  for (NodeId id : keep) graph.add_edge(graph.at(id).parent, id, EdgeKind::Implements);
  graph.modify_node(file, [&](Node& f) {
    if (f.docstring != parsed.docstring) f.docstring = parsed.docstring;
  });
}

ParsedFile parse_file(const KnowledgeGraph& graph, NodeId file, const AdapterRegistry& adapters,
                      IngestDiagnostics* diagnostics, bool* failed) {
  const Node& f = graph.at(file);
  *failed = false;
  const ParserAdapter& adapter = adapters.for_language(f.language.value_or(""));
  if (!f.raw_content) return adapters.fallback().parse({}, f.path);
  try {
    ParsedFile p = adapter.parse(*f.raw_content, f.path);
    const int lines = static_cast<int>(std::count(f.raw_content->begin(), f.raw_content->end(), '\n')) + 1;
    for (const auto& e : p.entities) {
      if (e.line_span.start < 1 || e.line_span.end > lines || e.line_span.start > e.line_span.end)
        throw ParseError("entity " + e.qualified_name + " lies outside the file", f.path);
      if (e.parent && *e.parent >= p.entities.size())
        throw ParseError("entity " + e.qualified_name + " has an unknown parent", f.path);
    }
    return p;
  } catch (const std::exception& ex) {
    *failed = true;
    if (diagnostics) diagnostics->parse_failures.push_back({f.path, ex.what()});
    return adapters.fallback().parse({}, f.path);
  }
}

namespace {

struct Binding {
  std::string path;
  std::string symbol;  // empty: the module itself
};

struct FileTable {
  const ParserAdapter* adapter = nullptr;
  std::map<std::string, Binding> bindings;
  std::vector<std::string> star_imports;
};

class Resolver {
 public:
  Resolver(const KnowledgeGraph& g, std::map<std::string, FileTable>& tables) : g_(g), tables_(tables) {
    for (const auto& [id, n] : g.nodes())
      if (is_entity(n.kind)) symbols_[{n.path, n.qualified_name}].push_back(id);
    for (auto& [key, ids] : symbols_) std::sort(ids.begin(), ids.end());
  }

  // Entity named `qname` in `path`, following re-exports.
  std::optional<NodeId> in_file(const std::string& path, const std::string& qname, int depth = 0) const {
    if (auto it = symbols_.find({path, qname}); it != symbols_.end()) return pick(it->second);
    if (depth > 4) return std::nullopt;
    const auto t = tables_.find(path);
    if (t == tables_.end()) return std::nullopt;
    return via_bindings(t->second, qname, depth + 1);
  }

  std::optional<NodeId> via_bindings(const FileTable& table, const std::string& target, int depth) const {
    const char sep = table.adapter ? table.adapter->scope_separator() : '.';
    const auto parts = split(target, sep);
    for (std::size_t i = parts.size(); i >= 1; --i) {
      const auto b = table.bindings.find(join(parts, 0, i, sep));
      if (b == table.bindings.end()) continue;
      std::string q = b->second.symbol;
      const std::string rest = join(parts, i, parts.size(), sep);
      if (!rest.empty()) q = q.empty() ? rest : q + sep + rest;
      if (q.empty()) return std::nullopt;
      return in_file(b->second.path, q, depth);
    }
    for (const auto& star : table.star_imports)
      if (auto id = in_file(star, target, depth)) return id;
    return std::nullopt;
  }

  // Resolution order: self/cls members (including inherited ones), same
  // file, imported names.
  std::optional<NodeId> resolve(const std::string& path, const std::string& source, const std::string& target) const {
    const auto t = tables_.find(path);
    const char sep = t != tables_.end() && t->second.adapter ? t->second.adapter->scope_separator() : '.';
    const auto parts = split(target, sep);
    if ((parts[0] == "self" || parts[0] == "cls") && parts.size() > 1) {
      const std::size_t cut = source.rfind(sep);
      if (cut == std::string::npos) return std::nullopt;
      const auto cls = in_file(path, source.substr(0, cut));
      if (!cls) return std::nullopt;
      return member(*cls, join(parts, 1, parts.size(), sep), sep);
    }
    if (auto id = in_file(path, target)) return id;
    if (t != tables_.end()) return via_bindings(t->second, target, 0);
    return std::nullopt;
  }

  // `name` on class `cls` or, breadth-first, on its bases.
  std::optional<NodeId> member(NodeId cls, const std::string& name, char sep) const {
    std::vector<NodeId> frontier{cls};
    std::set<NodeId> seen{cls};
    while (!frontier.empty()) {
      std::vector<NodeId> next;
      for (NodeId c : frontier) {
        const Node& n = g_.at(c);
        if (auto it = symbols_.find({n.path, n.qualified_name + sep + name}); it != symbols_.end())
          return pick(it->second);
        for (const Edge& e : g_.out_edges(c))
          if (e.kind == EdgeKind::Inherits && seen.insert(e.dst).second) next.push_back(e.dst);
      }
      std::sort(next.begin(), next.end());
      frontier = std::move(next);
    }
    return std::nullopt;
  }

  NodeId pick(const std::vector<NodeId>& ids) const {
    // Several kinds may share a name; prefer callables, then classes.
    for (NodeId id : ids)
      if (is_callable(g_.at(id).kind)) return id;
    return ids.front();
  }

  std::optional<NodeId> source_entity(const std::string& path, const std::string& qname, bool want_class) const {
    const auto it = symbols_.find({path, qname});
    if (it == symbols_.end()) return std::nullopt;
    for (NodeId id : it->second)
      if ((g_.at(id).kind == NodeKind::Class) == want_class) return id;
    return std::nullopt;
  }

 private:
  const KnowledgeGraph& g_;
  std::map<std::string, FileTable>& tables_;
  std::map<std::pair<std::string, std::string>, std::vector<NodeId>> symbols_;
};

}  // namespace

void resolve_relations(KnowledgeGraph& graph, const AdapterRegistry& adapters,
                       const std::map<std::string, ParsedFile>& parsed, IngestDiagnostics* diagnostics) {
  for (const Edge& e : graph.edges_sorted())
    if (e.kind == EdgeKind::Calls || e.kind == EdgeKind::Inherits || e.kind == EdgeKind::Refers)
      graph.remove_edge(e);

  std::vector<std::string> paths;
  for (const auto& [id, n] : graph.nodes())
    if (n.kind == NodeKind::File) paths.push_back(n.path);
  const PathIndex index(paths);

  std::map<std::string, FileTable> tables;
  for (const auto& [path, pf] : parsed) {
    FileTable& t = tables[path];
    const NodeId file = *graph.find_by_path(path);
    t.adapter = &adapters.for_language(graph.at(file).language.value_or(""));
    for (const ImportBinding& b : pf.imports) {
      const auto r = t.adapter->resolve_import(b, path, index);
      if (!r) {
        count_unresolved(diagnostics, EdgeKind::Refers);
        continue;
      }
      if (r->path != path) graph.add_edge(file, *graph.find_by_path(r->path), EdgeKind::Refers);
      if (b.symbol == "*") t.star_imports.push_back(r->path);
      else t.bindings[b.binding] = Binding{r->path, r->binds_module ? std::string() : b.symbol};
    }
  }

  Resolver resolver(graph, tables);
  // Inherits first: member lookups on self/cls walk the inheritance edges.
  for (EdgeKind kind : {EdgeKind::Inherits, EdgeKind::Calls}) {
    for (const auto& [path, pf] : parsed) {
      for (const ParsedRelation& r : pf.relations) {
        if (r.kind != kind) continue;
        const auto src = resolver.source_entity(path, r.source, kind == EdgeKind::Inherits);
        if (!src) {
          count_unresolved(diagnostics, kind);
          continue;
        }
        auto dst = resolver.resolve(path, r.source, r.target);
        if (dst && kind == EdgeKind::Calls && graph.at(*dst).kind == NodeKind::Class) {
          const char sep = tables[path].adapter ? tables[path].adapter->scope_separator() : '.';
          dst = resolver.member(*dst, "__init__", sep);
        }
        const bool ok = dst && (kind == EdgeKind::Inherits ? graph.at(*dst).kind == NodeKind::Class && *dst != *src
                                                           : is_callable(graph.at(*dst).kind));
        if (!ok) {
          count_unresolved(diagnostics, kind);
          continue;
        }
        graph.add_edge(*src, *dst, kind);
      }
    }
  }
}

void describe_root(KnowledgeGraph& graph) {
  std::map<std::string, std::size_t> languages;
  for (const auto& [id, n] : graph.nodes())
    if (n.kind == NodeKind::File && category_for_path(n.path) == FileCategory::Source) ++languages[*n.language];
  std::vector<std::pair<std::string, std::size_t>> ranked(languages.begin(), languages.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string text = "Repository " + graph.at(*graph.root()).name + ". Languages: ";
  if (ranked.empty()) text += "none";
  for (std::size_t i = 0; i < ranked.size(); ++i) text += (i ? ", " : "") + ranked[i].first;
  text += ".";
  graph.modify_node(*graph.root(), [&](Node& r) {
    if (r.description != text) r.description = text;
  });
}

IgnoreRules ignore_rules_for(const RepoSource& source, const std::vector<SourceFile>& listing,
                             const IngestFilters& filters) {
  IgnoreRules rules;
  if (filters.use_default_ignores) {
    rules.add_pattern("", ".git/");
    for (const auto& n : default_ignored_names()) rules.add_pattern("", n);
  }
  if (filters.use_ignore_files) {
    std::vector<std::string> ignore_files;
    for (const auto& f : listing)
      if (basename_of(f.path) == ".gitignore") ignore_files.push_back(f.path);
    // Shallow files first so that deeper rules override them.
    std::stable_sort(ignore_files.begin(), ignore_files.end(), [](const auto& a, const auto& b) {
      return std::count(a.begin(), a.end(), '/') < std::count(b.begin(), b.end(), '/');
    });
    const auto contents = source.read_many(ignore_files);
    for (std::size_t i = 0; i < ignore_files.size(); ++i)
      if (contents[i]) rules.add_file(std::string(dirname_of(ignore_files[i])), *contents[i]);
  }
  for (const auto& p : filters.extra_patterns) rules.add_pattern("", p);
  return rules;
}

std::vector<SourceFile> kept_files(const std::vector<SourceFile>& listing, const IgnoreRules& rules,
                                   const IngestFilters& filters, IngestDiagnostics* diagnostics) {
  std::vector<SourceFile> out;
  for (const auto& f : listing) {
    if (rules.ignored(f.path)) continue;
    if (f.size > filters.size_cap) {
      warn(diagnostics, "skipped " + f.path + ": " + std::to_string(f.size) + " bytes exceeds the size cap");
      continue;
    }
    out.push_back(f);
  }
  return out;
}

NodeId upsert_file(KnowledgeGraph& graph, const std::string& path, const std::string& content) {
  const NodeId parent = ensure_folder(graph, std::string(dirname_of(path)));
  Node n;
  n.kind = NodeKind::File;
  n.path = path;
  n.name = std::string(basename_of(path));
  n.parent = parent;
  n.language = language_for_path(path);
  n.size_bytes = content.size();
  if (!looks_binary(content)) n.raw_content = content;
  const NodeId id = KnowledgeGraph::identity_of(n);
  const Node* old = graph.find(id);
  if (old) {
    if (old->raw_content == n.raw_content && old->size_bytes == n.size_bytes) return id;
    n.docstring = old->docstring;  // refreshed by the next parse
  }
  const bool is_new = old == nullptr;
  const NodeId out = graph.upsert_node(std::move(n));
  graph.add_edge(parent, out, EdgeKind::Contains);
  if (is_new) touch_folder(graph, parent);
  return out;
}

}  // namespace detail

KnowledgeGraph build_skeleton(const RepoSource& source, const IngestFilters& filters,
                              IngestDiagnostics* diagnostics) {
  KnowledgeGraph g;
  g.meta().repo_url = source.url();
  g.meta().revision = source.revision();
  g.meta().graph_id = sha256_hex(g.meta().repo_url).substr(0, 16);
  g.meta().created_at = g.meta().updated_at = Timestamp::now();
  Node root;
  root.kind = NodeKind::Root;
  root.name = source.name();
  g.upsert_node(root);

  const auto listing = source.list_files();
  const auto rules = detail::ignore_rules_for(source, listing, filters);
  const auto kept = detail::kept_files(listing, rules, filters, diagnostics);
  std::vector<std::string> paths;
  for (const auto& f : kept) paths.push_back(f.path);
  const auto contents = source.read_many(paths);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!contents[i]) {
      warn(diagnostics, "skipped " + paths[i] + ": unreadable");
      continue;
    }
    detail::upsert_file(g, paths[i], *contents[i]);
  }
  detail::describe_root(g);
  return g;
}

void parse_repository(KnowledgeGraph& graph, const AdapterRegistry& adapters, IngestDiagnostics* diagnostics) {
  std::map<std::string, ParsedFile> parsed;
  std::vector<NodeId> files;
  for (const auto& [id, n] : graph.nodes())
    if (n.kind == NodeKind::File) files.push_back(id);
  std::sort(files.begin(), files.end(), [&](NodeId a, NodeId b) { return graph.at(a).path < graph.at(b).path; });
  for (NodeId f : files) {
    bool failed = false;
    ParsedFile p = detail::parse_file(graph, f, adapters, diagnostics, &failed);
    graph.modify_node(f, [&](Node& n) {
      if (n.parse_failed != failed) n.parse_failed = failed;
    });
    detail::apply_entities(graph, f, p);
    parsed.emplace(graph.at(f).path, std::move(p));
  }
  detail::resolve_relations(graph, adapters, parsed, diagnostics);
}

bool is_test_path(const std::string& path, const TestHeuristics& heuristics) {
  const auto parts = split(path, '/');
  for (std::size_t i = 0; i + 1 < parts.size(); ++i)
    if (std::find(heuristics.test_dirs.begin(), heuristics.test_dirs.end(), parts[i]) != heuristics.test_dirs.end())
      return true;
  return stripped_test_stem(path) != stem_of(path);
}

std::string stripped_test_stem(const std::string& path) {
  std::string stem = stem_of(path);
  for (const char* prefix : {"test_", "tests_"})
    if (stem.size() > std::string(prefix).size() && stem.rfind(prefix, 0) == 0) return stem.substr(std::string(prefix).size());
  for (const char* suffix : {"_test", "_tests", ".test", ".spec", "Test", "Tests", "_spec"}) {
    const std::string s(suffix);
    if (stem.size() > s.size() && stem.ends_with(s)) return stem.substr(0, stem.size() - s.size());
  }
  return stem;
}

void link_tests(KnowledgeGraph& graph, const TestHeuristics& heuristics) {
  for (const Edge& e : graph.edges_sorted())
    if (e.kind == EdgeKind::Tests) graph.remove_edge(e);

  std::vector<NodeId> tests;
  std::map<std::pair<std::string, std::string>, std::vector<NodeId>> targets;  // (language, stem) -> files
  for (const auto& [id, n] : graph.nodes()) {
    if (n.kind != NodeKind::File || category_for_path(n.path) != FileCategory::Source) continue;
    if (is_test_path(n.path, heuristics)) tests.push_back(id);
    else targets[{*n.language, stem_of(n.path)}].push_back(id);
  }
  std::sort(tests.begin(), tests.end());
  const auto dir_segments = [&](const std::string& path) {
    std::set<std::string> segs;
    const auto parts = split(std::string(dirname_of(path)), '/');
    for (const auto& p : parts)
      if (!p.empty() && std::find(heuristics.test_dirs.begin(), heuristics.test_dirs.end(), p) == heuristics.test_dirs.end())
        segs.insert(p);
    return segs;
  };

  for (NodeId t : tests) {
    const Node& tn = graph.at(t);
    const auto it = targets.find({*tn.language, stripped_test_stem(tn.path)});
    if (it == targets.end()) continue;
    const auto mine = dir_segments(tn.path);
    std::size_t best = 0;
    std::vector<NodeId> chosen;
    for (NodeId cand : it->second) {
      std::size_t shared = 0;
      for (const auto& s : dir_segments(graph.at(cand).path)) shared += mine.count(s);
      if (chosen.empty() || shared > best) {
        best = shared;
        chosen = {cand};
      } else if (shared == best) {
        chosen.push_back(cand);
      }
    }
    for (NodeId c : chosen) graph.add_edge(t, c, EdgeKind::Tests);
    if (!heuristics.link_functions) continue;

    std::map<std::string, std::vector<NodeId>> callables;
    for (NodeId c : chosen)
      for (NodeId e : detail::entity_subtree(graph, c))
        if (is_callable(graph.at(e).kind)) callables[graph.at(e).name].push_back(e);
    for (NodeId e : detail::entity_subtree(graph, t)) {
      const Node& fn = graph.at(e);
      if (!is_callable(fn.kind)) continue;
      std::string name;
      if (fn.name.rfind("test_", 0) == 0) name = fn.name.substr(5);
      else if (fn.name.size() > 4 && fn.name.rfind("test", 0) == 0 && std::isupper(static_cast<unsigned char>(fn.name[4])))
        name = std::string(1, static_cast<char>(std::tolower(static_cast<unsigned char>(fn.name[4])))) + fn.name.substr(5);
      // test_handle_creates_project -> handle_creates_project, handle_creates, handle
      while (!name.empty()) {
        if (const auto hit = callables.find(name); hit != callables.end()) {
          for (NodeId target : hit->second) graph.add_edge(e, target, EdgeKind::Tests);
          break;
        }
        const std::size_t cut = name.rfind('_');
        if (cut == std::string::npos || cut == 0) break;
        name.resize(cut);
      }
    }
  }
}

KnowledgeGraph build_graph(const RepoSource& source, const AdapterRegistry& adapters, const BuildOptions& options,
                           IngestDiagnostics* diagnostics) {
  KnowledgeGraph g = build_skeleton(source, options.filters, diagnostics);
  parse_repository(g, adapters, diagnostics);
  link_tests(g, options.tests);
  return g;
}

}  // namespace repograph
