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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace repograph {

inline constexpr std::uint64_t kDefaultSizeCap = 1u << 20;

// Lockfiles and other generated artifacts skipped by default.
const std::vector<std::string>& default_ignored_names();

// Glob match with gitignore semantics for '*', '?', '[...]' and '**'.
// '*' and '?' never match '/'.
bool glob_match(std::string_view pattern, std::string_view path);

// Ordered gitignore-style rule set. Later rules override earlier ones;
// rules from a nested ignore file apply only below its directory.
class IgnoreRules {
 public:
  // `base_dir` is the repository-relative directory holding the ignore file
  // ("" for the root).
  void add_file(const std::string& base_dir, std::string_view content);
  void add_pattern(const std::string& base_dir, std::string_view line);

  // A path is ignored if it, or any of its parent directories, is ignored.
  bool ignored(const std::string& path) const;

  std::size_t size() const { return rules_.size(); }

 private:
  struct Rule {
    std::string base;
    std::string pattern;
    bool negate = false;
    bool dir_only = false;
    bool anchored = false;
  };
  // nullopt-like tri-state: 1 ignored, 0 re-included, -1 no rule matched.
  int match(const std::string& path, bool is_dir) const;

  std::vector<Rule> rules_;
};

struct IngestFilters {
  bool use_ignore_files = true;
  bool use_default_ignores = true;
  std::uint64_t size_cap = kDefaultSizeCap;
  std::vector<std::string> extra_patterns;  // gitignore syntax, root-relative
};

// True when the first 8000 bytes contain a NUL.
bool looks_binary(std::string_view content);

}  // namespace repograph
