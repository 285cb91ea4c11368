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

#include "repograph/ingest/ignore.hpp"

#include <algorithm>

namespace repograph {

const std::vector<std::string>& default_ignored_names() {
  static const std::vector<std::string> names = {
      "poetry.lock", "Pipfile.lock", "uv.lock",    "package-lock.json", "yarn.lock",  "pnpm-lock.yaml",
      "Cargo.lock",  "composer.lock", "Gemfile.lock", "go.sum",         "flake.lock", "mix.lock"};
  return names;
}

namespace {

bool class_match(std::string_view pat, std::size_t& i, char c) {
  // pat[i] == '['; on return i points past ']'.
  std::size_t j = i + 1;
  bool negate = false;
  if (j < pat.size() && (pat[j] == '!' || pat[j] == '^')) {
    negate = true;
    ++j;
  }
  bool hit = false;
  bool first = true;
  while (j < pat.size() && (first || pat[j] != ']')) {
    first = false;
    if (j + 2 < pat.size() && pat[j + 1] == '-' && pat[j + 2] != ']') {
      if (pat[j] <= c && c <= pat[j + 2]) hit = true;
      j += 3;
    } else {
      if (pat[j] == c) hit = true;
      ++j;
    }
  }
  i = j < pat.size() ? j + 1 : j;
  return hit != negate;
}

bool match_from(std::string_view p, std::size_t pi, std::string_view s, std::size_t si) {
  while (pi < p.size()) {
    const char c = p[pi];
    if (c == '*') {
      const bool dbl = pi + 1 < p.size() && p[pi + 1] == '*';
      if (dbl) {
        std::size_t next = pi + 2;
        const bool slash_after = next < p.size() && p[next] == '/';
        const bool at_segment_start = pi == 0 || p[pi - 1] == '/';
        if (at_segment_start && slash_after) {
          // "**/" matches zero or more whole directories.
          for (std::size_t k = si;; ++k) {
            if ((k == si || s[k - 1] == '/') && match_from(p, next + 1, s, k)) return true;
            if (k >= s.size()) return false;
          }
        }
        for (std::size_t k = si; k <= s.size(); ++k)
          if (match_from(p, next, s, k)) return true;
        return false;
      }
      for (std::size_t k = si; k <= s.size(); ++k) {
        if (match_from(p, pi + 1, s, k)) return true;
        if (k < s.size() && s[k] == '/') return false;
      }
      return false;
    }
    if (si >= s.size()) return false;
    if (c == '?') {
      if (s[si] == '/') return false;
      ++pi;
      ++si;
    } else if (c == '[') {
      if (s[si] == '/' || !class_match(p, pi, s[si])) return false;
      ++si;
    } else {
      if (c == '\\' && pi + 1 < p.size()) ++pi;
      if (p[pi] != s[si]) return false;
      ++pi;
      ++si;
    }
  }
  return si == s.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  // Trailing spaces are ignored unless escaped.
  while (!s.empty() && s.back() == ' ' && !(s.size() >= 2 && s[s.size() - 2] == '\\')) s.remove_suffix(1);
  return s;
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) { return match_from(pattern, 0, path, 0); }

void IgnoreRules::add_pattern(const std::string& base_dir, std::string_view line) {
  line = trim(line);
  if (line.empty() || line.front() == '#') return;
  Rule r;
  r.base = base_dir;
  if (line.front() == '!') {
    r.negate = true;
    line.remove_prefix(1);
  } else if (line.front() == '\\') {
    line.remove_prefix(1);
  }
  if (!line.empty() && line.back() == '/') {
    r.dir_only = true;
    line.remove_suffix(1);
  }
  if (line.empty()) return;
  // A slash anywhere but the end anchors the pattern to its base directory.
  if (line.find('/') != std::string_view::npos) r.anchored = true;
  if (line.front() == '/') line.remove_prefix(1);
  r.pattern = std::string(line);
  rules_.push_back(std::move(r));
}

void IgnoreRules::add_file(const std::string& base_dir, std::string_view content) {
  std::size_t pos = 0;
  while (pos <= content.size()) {
    const std::size_t eol = content.find('\n', pos);
    add_pattern(base_dir, content.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
}

int IgnoreRules::match(const std::string& path, bool is_dir) const {
  int verdict = -1;
  for (const Rule& r : rules_) {
    if (r.dir_only && !is_dir) continue;
    std::string_view rel = path;
    if (!r.base.empty()) {
      if (path.size() <= r.base.size() || path.compare(0, r.base.size(), r.base) != 0 || path[r.base.size()] != '/')
        continue;
      rel.remove_prefix(r.base.size() + 1);
    }
    bool hit;
    if (r.anchored) {
      hit = glob_match(r.pattern, rel);
    } else {
      const std::size_t slash = rel.rfind('/');
      hit = glob_match(r.pattern, slash == std::string_view::npos ? rel : rel.substr(slash + 1));
    }
    if (hit) verdict = r.negate ? 0 : 1;
  }
  return verdict;
}

bool IgnoreRules::ignored(const std::string& path) const {
  // An excluded directory cannot have its contents re-included.
  for (std::size_t pos = path.find('/'); pos != std::string::npos; pos = path.find('/', pos + 1))
    if (match(path.substr(0, pos), true) == 1) return true;
  return match(path, false) == 1;
}

bool looks_binary(std::string_view content) {
  return content.substr(0, std::min<std::size_t>(content.size(), 8000)).find('\0') != std::string_view::npos;
}

}  // namespace repograph
