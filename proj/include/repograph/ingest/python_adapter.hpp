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

#include "repograph/ingest/adapter.hpp"

namespace repograph {

// Indentation-aware Python reader. Extracts classes, top-level functions,
// methods, docstrings, imports, call sites and base classes. Functions nested
// inside functions are not entities; their calls count for the enclosing one.
class PythonAdapter final : public ParserAdapter {
 public:
  std::string language() const override { return "Python"; }
  ParsedFile parse(std::string_view content, const std::string& path) const override;
  std::optional<ResolvedImport> resolve_import(const ImportBinding& import, const std::string& importer,
                                              const PathIndex& files) const override;
  bool is_builtin(std::string_view name) const override;
};

}  // namespace repograph
