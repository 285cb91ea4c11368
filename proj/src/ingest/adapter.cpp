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

#include "repograph/ingest/adapter.hpp"

#include <algorithm>

#include "repograph/core/file_types.hpp"
#include "repograph/ingest/python_adapter.hpp"

namespace repograph {

PathIndex::PathIndex(std::vector<std::string> paths) : paths_(std::move(paths)) {
  std::sort(paths_.begin(), paths_.end());
  for (const auto& p : paths_) by_basename_.emplace(std::string(basename_of(p)), p);
}

bool PathIndex::contains(const std::string& path) const {
  return std::binary_search(paths_.begin(), paths_.end(), path);
}

std::vector<std::string> PathIndex::with_suffix(const std::string& suffix) const {
  std::vector<std::string> out;
  const auto [lo, hi] = by_basename_.equal_range(std::string(basename_of(suffix)));
  for (auto it = lo; it != hi; ++it) {
    const std::string& p = it->second;
    if (p == suffix || (p.size() > suffix.size() && p.ends_with(suffix) && p[p.size() - suffix.size() - 1] == '/'))
      out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::optional<ResolvedImport> ParserAdapter::resolve_import(const ImportBinding&, const std::string&,
                                                            const PathIndex&) const {
  return std::nullopt;
}

ParsedFile FallbackAdapter::parse(std::string_view, const std::string& path) const {
  ParsedFile f;
  f.path = path;
  f.language = language_for_path(path);
  return f;
}

AdapterRegistry::AdapterRegistry() : fallback_(std::make_shared<FallbackAdapter>()) {}

void AdapterRegistry::add(std::shared_ptr<const ParserAdapter> adapter) {
  by_language_[adapter->language()] = std::move(adapter);
}

const ParserAdapter& AdapterRegistry::for_language(const std::string& language) const {
  const auto it = by_language_.find(language);
  return it == by_language_.end() ? *fallback_ : *it->second;
}

std::vector<std::string> AdapterRegistry::languages() const {
  std::vector<std::string> out;
  for (const auto& [lang, _] : by_language_) out.push_back(lang);
  return out;
}

AdapterRegistry AdapterRegistry::with_defaults() {
  AdapterRegistry r;
  r.add(std::make_shared<PythonAdapter>());
  return r;
}

}  // namespace repograph
