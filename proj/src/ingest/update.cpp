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

#include "repograph/ingest/update.hpp"

#include <algorithm>
#include <set>

#include "process.hpp"
#include "repograph/core/error.hpp"
#include "repograph/core/file_types.hpp"

namespace repograph {

nlohmann::json ChangeSet::to_json() const {
  return {{"old_revision", old_revision}, {"new_revision", new_revision},
          {"added", added},               {"modified", modified},
          {"deleted", deleted}};
}

ChangeSet diff_revisions(const GitRepoSource& repo, const std::string& old_rev, const std::string& new_rev) {
  ChangeSet cs;
  cs.old_revision = resolve_revision(repo.dir(), old_rev);
  cs.new_revision = resolve_revision(repo.dir(), new_rev);
  if (cs.old_revision == cs.new_revision) return cs;
  if (!is_ancestor(repo.dir(), cs.old_revision, cs.new_revision))
    throw RevisionError(cs.new_revision + " does not descend from " + cs.old_revision +
                        "; updates must follow one branch");
  const auto r = detail::run_process(
      {"git", "diff", "--name-status", "--no-renames", "-z", cs.old_revision, cs.new_revision}, repo.dir());
  if (r.exit_code != 0) throw Error("git diff failed: " + r.err);
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos < r.out.size()) {
    const std::size_t end = r.out.find('\0', pos);
    fields.push_back(r.out.substr(pos, end - pos));
    pos = end == std::string::npos ? r.out.size() : end + 1;
  }
  for (std::size_t i = 0; i + 1 < fields.size(); i += 2) {
    const char status = fields[i].empty() ? '?' : fields[i][0];
    const std::string& path = fields[i + 1];
    if (status == 'A') cs.added.push_back(path);
    else if (status == 'D') cs.deleted.push_back(path);
    else cs.modified.push_back(path);  // M, T (type change), U
  }
  std::sort(cs.added.begin(), cs.added.end());
  std::sort(cs.modified.begin(), cs.modified.end());
  std::sort(cs.deleted.begin(), cs.deleted.end());
  return cs;
}

namespace {

void check_disjoint(const ChangeSet& cs) {
  std::set<std::string> seen;
  for (const auto* list : {&cs.added, &cs.modified, &cs.deleted})
    for (const auto& p : *list)
      if (!seen.insert(p).second) throw ValidationError("path " + p + " appears in more than one change list");
}

void remove_file(KnowledgeGraph& g, NodeId file) {
  const std::string path = g.at(file).path;
  const auto entities = detail::entity_subtree(g, file);
  for (auto it = entities.rbegin(); it != entities.rend(); ++it) g.remove_node(*it);
  const NodeId parent = g.at(file).parent;
  g.remove_node(file);
  detail::touch_folder(g, parent);
  detail::prune_empty_folders(g, std::string(dirname_of(path)));
}

}  // namespace

UpdateReport update_graph(KnowledgeGraph& graph, const ChangeSet& changes, const RepoSource& source,
                          const AdapterRegistry& adapters, const BuildOptions& options,
                          IngestDiagnostics* diagnostics) {
  if (graph.meta().revision != changes.old_revision)
    throw RevisionError("graph is at revision '" + graph.meta().revision + "' but the change set starts at '" +
                        changes.old_revision + "'");
  if (!source.revision().empty() && source.revision() != changes.new_revision)
    throw RevisionError("source is pinned to " + source.revision() + ", expected " + changes.new_revision);
  check_disjoint(changes);

  UpdateReport report;
  if (changes.empty()) {
    graph.meta().revision = changes.new_revision;
    graph.meta().updated_at = Timestamp::now();
    return report;
  }

  // The kept-file set at the new revision decides membership, so ignore
  // rule and size-cap changes are honoured exactly as a full build would.
  const auto listing = source.list_files();
  const auto rules = detail::ignore_rules_for(source, listing, options.filters);
  std::set<std::string> wanted;
  for (const auto& f : detail::kept_files(listing, rules, options.filters, diagnostics)) wanted.insert(f.path);

  std::set<std::string> present;
  for (const auto& [id, n] : graph.nodes())
    if (n.kind == NodeKind::File) present.insert(n.path);

  std::set<std::string> to_remove, to_write;
  for (const auto& p : present)
    if (!wanted.count(p)) to_remove.insert(p);
  for (const auto& p : wanted)
    if (!present.count(p)) to_write.insert(p);
  for (const auto* list : {&changes.added, &changes.modified})
    for (const auto& p : *list)
      if (wanted.count(p)) to_write.insert(p);

  std::vector<std::string> write_list(to_write.begin(), to_write.end());
  const auto contents = source.read_many(write_list);
  for (std::size_t i = 0; i < write_list.size(); ++i)
    if (!contents[i]) {
      if (diagnostics) diagnostics->warnings.push_back("skipped " + write_list[i] + ": unreadable");
      if (present.count(write_list[i])) to_remove.insert(write_list[i]);
    }

  for (const auto& p : to_remove) {
    if (const auto id = graph.find_by_path(p)) remove_file(graph, *id);
    report.files_removed.push_back(p);
  }

  std::map<std::string, ParsedFile> parsed;
  for (std::size_t i = 0; i < write_list.size(); ++i) {
    if (!contents[i]) continue;
    const std::string& p = write_list[i];
    const auto before = graph.find_by_path(p);
    const std::optional<std::string> old_content = before ? graph.at(*before).raw_content : std::nullopt;
    const std::optional<std::uint64_t> old_size = before ? graph.at(*before).size_bytes : std::nullopt;
    const NodeId file = detail::upsert_file(graph, p, *contents[i]);
    if (before && graph.at(file).raw_content == old_content && graph.at(file).size_bytes == old_size) continue;
    (before ? report.files_changed : report.files_added).push_back(p);
    bool failed = false;
    ParsedFile pf = detail::parse_file(graph, file, adapters, diagnostics, &failed);
    graph.modify_node(file, [&](Node& n) {
      if (n.parse_failed != failed) n.parse_failed = failed;
    });
    detail::apply_entities(graph, file, pf);
    parsed.emplace(p, std::move(pf));
  }

  // Relations are re-resolved for the whole repository: an edit in one file
  // can change what names in another file resolve to.
  for (const auto& [id, n] : graph.nodes()) {
    if (n.kind != NodeKind::File || parsed.count(n.path)) continue;
    bool failed = false;
    parsed.emplace(n.path, detail::parse_file(graph, id, adapters, nullptr, &failed));
  }
  detail::resolve_relations(graph, adapters, parsed, diagnostics);
  link_tests(graph, options.tests);
  detail::describe_root(graph);

  for (const auto& [id, n] : graph.nodes())
    if (n.stale && n.kind != NodeKind::Root) ++report.nodes_marked_stale;
  graph.meta().revision = changes.new_revision;
  graph.meta().updated_at = Timestamp::now();
  return report;
}

}  // namespace repograph
