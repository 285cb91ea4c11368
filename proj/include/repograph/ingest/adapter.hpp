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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repograph/core/types.hpp"

namespace repograph {

struct ParsedEntity {
  NodeKind kind = NodeKind::Function;  // Class, Function or MemberFunction
  std::string name;
  std::string qualified_name;
  std::optional<std::string> signature;
  std::optional<std::string> docstring;
  std::string raw_content;
  LineSpan line_span;
  std::optional<std::size_t> parent;  // index into ParsedFile::entities

  friend bool operator==(const ParsedEntity&, const ParsedEntity&) = default;
};

// `source` is the qualified name of the originating entity, or empty for
// the file itself. `target` is the name as written in the source text.
struct ParsedRelation {
  EdgeKind kind = EdgeKind::Calls;
  std::string source;
  std::string target;
  int line = 0;

  friend bool operator==(const ParsedRelation&, const ParsedRelation&) = default;
};

// One name bound by an import statement. For `import a.b` the binding is
// "a.b"; for `from a import b as c` it is "c" with module "a", symbol "b".
struct ImportBinding {
  std::string module;  // may start with '.' for relative imports
  std::string symbol;  // empty when the module itself is bound
  std::string binding;
  int line = 0;

  friend bool operator==(const ImportBinding&, const ImportBinding&) = default;
};

struct ParsedFile {
  std::string path;
  std::string language;
  std::optional<std::string> docstring;
  std::vector<ParsedEntity> entities;
  std::vector<ParsedRelation> relations;
  std::vector<ImportBinding> imports;

  friend bool operator==(const ParsedFile&, const ParsedFile&) = default;
};

// Sorted list of repository file paths, for module resolution.
class PathIndex {
 public:
  explicit PathIndex(std::vector<std::string> paths);
  bool contains(const std::string& path) const;
  // Paths equal to `suffix` or ending in "/" + suffix, shortest first.
  std::vector<std::string> with_suffix(const std::string& suffix) const;

 private:
  std::vector<std::string> paths_;
  std::multimap<std::string, std::string> by_basename_;
};

// Where an import points. `binds_module` is true when the bound name
// refers to the file itself rather than to a symbol inside it.
struct ResolvedImport {
  std::string path;
  bool binds_module = true;
};

// Language adapter. Must be deterministic and stateless: the same content
// always yields the same ParsedFile, and parse() may run concurrently.
class ParserAdapter {
 public:
  virtual ~ParserAdapter() = default;
  virtual std::string language() const = 0;
  virtual ParsedFile parse(std::string_view content, const std::string& path) const = 0;
  // Repository file an import refers to, if it is in the repo.
  virtual std::optional<ResolvedImport> resolve_import(const ImportBinding& import, const std::string& importer,
                                                    const PathIndex& files) const;
  // Names that never resolve to repository code (language builtins).
  virtual bool is_builtin(std::string_view) const { return false; }
  // Separator used in qualified names and dotted references.
  virtual char scope_separator() const { return '.'; }
};

// File-level only: records the file and nothing inside it.
class FallbackAdapter final : public ParserAdapter {
 public:
  std::string language() const override { return "*"; }
  ParsedFile parse(std::string_view content, const std::string& path) const override;
};

// Maps the language reported by language_for_path() to an adapter; files in
// any other language go to the fallback.
class AdapterRegistry {
 public:
  AdapterRegistry();
  void add(std::shared_ptr<const ParserAdapter> adapter);
  const ParserAdapter& for_language(const std::string& language) const;
  const ParserAdapter& fallback() const { return *fallback_; }
  // Identity of the adapter set, recorded so that rebuilds can be compared.
  std::vector<std::string> languages() const;

  // Python adapter plus the fallback.
  static AdapterRegistry with_defaults();

 private:
  std::map<std::string, std::shared_ptr<const ParserAdapter>> by_language_;
  std::shared_ptr<const ParserAdapter> fallback_;
};

}  // namespace repograph
