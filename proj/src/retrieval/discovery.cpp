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
#include <cctype>
#include <sstream>

#include "repograph/enrich/prompts.hpp"
#include "repograph/retrieval/search.hpp"

namespace repograph {

namespace {

bool delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || std::string_view("\"'`,()[]{}<>;|").find(c) != std::string_view::npos;
}

std::string clean_token(std::string t) {
  std::replace(t.begin(), t.end(), '\\', '/');
  if (const std::size_t hash = t.find('#'); hash != std::string::npos && hash > 0) t.erase(hash);  // URL anchors
  // ":12" or ":12:3" line suffixes.
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t colon = t.rfind(':');
    if (colon == std::string::npos || colon + 1 == t.size()) break;
    if (!std::all_of(t.begin() + static_cast<long>(colon) + 1, t.end(), [](unsigned char c) { return std::isdigit(c); }))
      break;
    t.erase(colon);
  }
  while (!t.empty() && std::string_view(".,:;!?*").find(t.back()) != std::string_view::npos) t.pop_back();
  while (!t.empty() && (t.front() == '*' || t.front() == '#')) t.erase(t.begin());
  return t;
}

std::vector<std::string> segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const std::size_t slash = std::min(path.find('/', pos), path.size());
    const std::string_view seg = path.substr(pos, slash - pos);
    if (!seg.empty() && seg != ".") out.emplace_back(seg);
    pos = slash + 1;
  }
  return out;
}

struct FileIndex {
  std::vector<std::pair<NodeId, std::vector<std::string>>> files;

  explicit FileIndex(const KnowledgeGraph& g) {
    for (NodeId id : g.node_ids_sorted()) {
      const Node& n = g.at(id);
      if (n.kind == NodeKind::File) files.emplace_back(id, segments(n.path));
    }
  }

  void match(const std::string& token, std::set<NodeId>& out) const {
    const auto tok = segments(token);
    if (tok.empty()) return;
    std::size_t best = 0;
    std::vector<NodeId> winners;
    for (const auto& [id, segs] : files) {
      std::size_t c = 0;
      while (c < tok.size() && c < segs.size() && tok[tok.size() - 1 - c] == segs[segs.size() - 1 - c]) ++c;
      if (c == 0 || (c != tok.size() && c != segs.size())) continue;
      if (c > best) {
        best = c;
        winners.clear();
      }
      if (c == best) winners.push_back(id);
    }
    out.insert(winners.begin(), winners.end());
  }
};

}  // namespace

std::vector<std::string> path_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    std::string t = clean_token(std::move(cur));
    cur.clear();
    if (t.find_first_of("/.") == std::string::npos) return;
    if (std::none_of(t.begin(), t.end(), [](unsigned char c) { return std::isalnum(c); })) return;
    out.push_back(std::move(t));
  };
  for (char c : text) {
    if (delimiter(c)) flush();
    else cur.push_back(c);
  }
  flush();
  return out;
}

std::set<NodeId> discover_mentioned_files(const std::string& query, const KnowledgeGraph& graph,
                                          const LanguageModel* llm, std::vector<std::string>* warnings) {
  std::set<NodeId> found;
  const FileIndex index(graph);
  for (const auto& t : path_tokens(query)) index.match(t, found);
  if (!llm) return found;
  try {
    const auto root = graph.root();
    const std::string context = root ? graph.at(*root).description.value_or(graph.at(*root).name) : "";
    const std::string prompt =
        prompts::render(prompts::discover_files_template(), {{"query", query}, {"context", context}});
    std::istringstream lines(llm->complete({"discover_files", prompt, query}));
    std::string line;
    while (std::getline(lines, line))
      for (const auto& t : path_tokens(line)) index.match(t, found);
  } catch (const std::exception& e) {
    if (warnings) warnings->push_back(std::string("file discovery model failed; rule-based only: ") + e.what());
  }
  return found;
}

}  // namespace repograph
