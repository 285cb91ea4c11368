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

#include "repograph/ingest/repo_source.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "process.hpp"
#include "repograph/core/digest.hpp"
#include "repograph/core/error.hpp"

namespace fs = std::filesystem;

namespace repograph {

namespace {

std::string trim_newline(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

detail::ProcessResult git(const fs::path& dir, std::vector<std::string> args, const std::string& input = {}) {
  args.insert(args.begin(), "git");
  return detail::run_process(args, dir, input);
}

std::string git_ok(const fs::path& dir, const std::vector<std::string>& args) {
  auto r = git(dir, args);
  if (r.exit_code != 0) throw Error("git " + args.front() + " failed: " + trim_newline(r.err));
  return r.out;
}

bool is_git_root(const fs::path& dir) {
  const auto bare = git(dir, {"rev-parse", "--is-bare-repository"});
  if (bare.exit_code != 0) return false;
  if (trim_newline(bare.out) == "true") return true;
  const auto top = git(dir, {"rev-parse", "--show-toplevel"});
  if (top.exit_code != 0) return false;
  std::error_code ec;
  return fs::equivalent(fs::path(trim_newline(top.out)), dir, ec);
}

}  // namespace

std::vector<std::optional<std::string>> RepoSource::read_many(const std::vector<std::string>& paths) const {
  std::vector<std::optional<std::string>> out;
  out.reserve(paths.size());
  for (const auto& p : paths) {
    try {
      out.emplace_back(read(p));
    } catch (const Error&) {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

std::string resolve_revision(const fs::path& repo_dir, const std::string& revision) {
  const std::string rev = revision.empty() ? "HEAD" : revision;
  const auto r = git(repo_dir, {"rev-parse", "--verify", "--quiet", rev + "^{commit}"});
  if (r.exit_code != 0) throw RevisionError("revision '" + rev + "' does not resolve to a commit in " + repo_dir.string());
  return trim_newline(r.out);
}

bool is_ancestor(const fs::path& repo_dir, const std::string& ancestor, const std::string& descendant) {
  const auto r = git(repo_dir, {"merge-base", "--is-ancestor", ancestor, descendant});
  if (r.exit_code > 1) throw RevisionError("cannot compare revisions: " + trim_newline(r.err));
  return r.exit_code == 0;
}

GitRepoSource::GitRepoSource(fs::path repo_dir, const std::string& revision)
    : dir_(fs::absolute(std::move(repo_dir))), commit_(resolve_revision(dir_, revision)) {}

std::string GitRepoSource::name() const {
  std::string n = dir_.filename().string();
  if (n.empty()) n = dir_.parent_path().filename().string();
  if (n.size() > 4 && n.ends_with(".git")) n.resize(n.size() - 4);
  return n;
}

std::string GitRepoSource::url() const {
  const auto r = git(dir_, {"config", "--get", "remote.origin.url"});
  if (r.exit_code == 0 && !trim_newline(r.out).empty()) return trim_newline(r.out);
  return "file://" + dir_.string();
}

std::vector<SourceFile> GitRepoSource::list_files() const {
  const std::string out = git_ok(dir_, {"ls-tree", "-r", "-z", "--long", "--full-tree", commit_});
  std::vector<SourceFile> files;
  std::size_t pos = 0;
  while (pos < out.size()) {
    const std::size_t end = out.find('\0', pos);
    const std::string rec = out.substr(pos, end - pos);
    pos = end == std::string::npos ? out.size() : end + 1;
    const std::size_t tab = rec.find('\t');
    if (tab == std::string::npos) continue;
    std::istringstream meta(rec.substr(0, tab));
    std::string mode, type, object, size;
    meta >> mode >> type >> object >> size;
    // Regular files only: symlinks (120000) and submodules (commit) are skipped.
    if (type != "blob" || (mode != "100644" && mode != "100755")) continue;
    files.push_back({rec.substr(tab + 1), std::stoull(size)});
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return files;
}

std::string GitRepoSource::read(const std::string& path) const {
  auto r = git(dir_, {"cat-file", "blob", commit_ + ":" + path});
  if (r.exit_code != 0) throw NotFoundError("cannot read " + path + " at " + commit_);
  return std::move(r.out);
}

std::vector<std::optional<std::string>> GitRepoSource::read_many(const std::vector<std::string>& paths) const {
  std::string input;
  for (const auto& p : paths) input += commit_ + ":" + p + "\n";
  const auto r = git(dir_, {"cat-file", "--batch"}, input);
  if (r.exit_code != 0) throw Error("git cat-file --batch failed: " + trim_newline(r.err));
  std::vector<std::optional<std::string>> out;
  out.reserve(paths.size());
  std::size_t pos = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::size_t eol = r.out.find('\n', pos);
    if (eol == std::string::npos) throw Error("truncated git cat-file output");
    const std::string header = r.out.substr(pos, eol - pos);
    pos = eol + 1;
    if (header.ends_with(" missing") || header.ends_with(" ambiguous")) {
      out.emplace_back(std::nullopt);
      continue;
    }
    const std::size_t sp = header.rfind(' ');
    const std::size_t size = std::stoull(header.substr(sp + 1));
    out.emplace_back(r.out.substr(pos, size));
    pos += size + 1;  // trailing LF
  }
  return out;
}

DirectoryRepoSource::DirectoryRepoSource(fs::path root, std::string revision_label)
    : root_(fs::absolute(std::move(root))), label_(std::move(revision_label)) {
  if (!fs::is_directory(root_)) throw NotFoundError("not a directory: " + root_.string());
}

std::string DirectoryRepoSource::name() const {
  const std::string n = root_.filename().string();
  return n.empty() ? root_.parent_path().filename().string() : n;
}

std::string DirectoryRepoSource::url() const { return "file://" + root_.string(); }

std::vector<SourceFile> DirectoryRepoSource::list_files() const {
  std::vector<SourceFile> files;
  for (auto it = fs::recursive_directory_iterator(root_, fs::directory_options::skip_permission_denied);
       it != fs::recursive_directory_iterator(); ++it) {
    if (it->is_directory() && it->path().filename() == ".git") {
      it.disable_recursion_pending();
      continue;
    }
    if (!it->is_regular_file() || it->is_symlink()) continue;
    files.push_back({fs::relative(it->path(), root_).generic_string(), it->file_size()});
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return files;
}

std::string DirectoryRepoSource::read(const std::string& path) const {
  std::ifstream in(root_ / path, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::unique_ptr<RepoSource> open_repo(const RepoRef& ref, const fs::path& clone_cache) {
  const fs::path local(ref.url_or_path);
  if (fs::is_directory(local)) {
    if (is_git_root(local)) return std::make_unique<GitRepoSource>(local, ref.revision);
    if (!ref.revision.empty()) throw RevisionError("revision given for a directory that is not a git repository");
    return std::make_unique<DirectoryRepoSource>(local);
  }
  const fs::path cache = clone_cache.empty() ? fs::temp_directory_path() / "repograph-clones" : clone_cache;
  fs::create_directories(cache);
  const fs::path dir = cache / (sha256_hex(ref.url_or_path).substr(0, 16) + ".git");
  if (fs::exists(dir)) {
    git_ok(dir, {"fetch", "--quiet", "origin", "+refs/heads/*:refs/heads/*"});
  } else {
    std::vector<std::string> args{"clone", "--bare", "--quiet"};
    if (ref.branch) args.insert(args.end(), {"--branch", *ref.branch});
    args.insert(args.end(), {ref.url_or_path, dir.string()});
    git_ok(cache, args);
  }
  return std::make_unique<GitRepoSource>(dir, ref.revision.empty() && ref.branch ? *ref.branch : ref.revision);
}

}  // namespace repograph
