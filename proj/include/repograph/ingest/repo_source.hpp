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

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace repograph {

struct RepoRef {
  std::string url_or_path;
  std::string revision;  // anything `git rev-parse` accepts; empty = HEAD
  std::optional<std::string> branch;
};

struct SourceFile {
  std::string path;  // repository-relative, '/'-separated
  std::uint64_t size = 0;
};

// Read access to one revision of a repository.
class RepoSource {
 public:
  virtual ~RepoSource() = default;
  // Full commit hash, or empty for a plain directory.
  virtual const std::string& revision() const = 0;
  virtual std::string name() const = 0;
  virtual std::string url() const = 0;
  // Every regular file, sorted by path. No filtering.
  virtual std::vector<SourceFile> list_files() const = 0;
  virtual std::string read(const std::string& path) const = 0;
  // Bulk read; implementations may batch. Unreadable paths map to nullopt.
  virtual std::vector<std::optional<std::string>> read_many(const std::vector<std::string>& paths) const;
};

// A git working copy or bare repository pinned to one commit. Contents come
// from the object store, never from the working tree.
class GitRepoSource final : public RepoSource {
 public:
  // Throws RevisionError when the revision does not resolve to a commit.
  GitRepoSource(std::filesystem::path repo_dir, const std::string& revision);

  const std::string& revision() const override { return commit_; }
  std::string name() const override;
  std::string url() const override;
  std::vector<SourceFile> list_files() const override;
  std::string read(const std::string& path) const override;
  std::vector<std::optional<std::string>> read_many(const std::vector<std::string>& paths) const override;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::string commit_;
};

// A plain directory tree (no version control). `.git` is skipped.
class DirectoryRepoSource final : public RepoSource {
 public:
  explicit DirectoryRepoSource(std::filesystem::path root, std::string revision_label = {});

  const std::string& revision() const override { return label_; }
  std::string name() const override;
  std::string url() const override;
  std::vector<SourceFile> list_files() const override;
  std::string read(const std::string& path) const override;

 private:
  std::filesystem::path root_;
  std::string label_;
};

// Full commit hash for `revision` in `repo_dir`. Throws RevisionError.
std::string resolve_revision(const std::filesystem::path& repo_dir, const std::string& revision);

// True iff `ancestor` is reachable from `descendant` (equal counts).
bool is_ancestor(const std::filesystem::path& repo_dir, const std::string& ancestor, const std::string& descendant);

// Opens a RepoRef: local git repositories are read in place, local
// directories without git are read as plain trees, and anything else is
// cloned (bare) into `clone_cache`.
std::unique_ptr<RepoSource> open_repo(const RepoRef& ref, const std::filesystem::path& clone_cache = {});

}  // namespace repograph
