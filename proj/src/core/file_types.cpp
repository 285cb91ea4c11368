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

#include "repograph/core/file_types.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace repograph {

namespace {

struct ExtEntry {
  std::string_view ext;
  std::string_view language;
  FileCategory category;
};

constexpr std::array kExtensions = {
    ExtEntry{".py", "Python", FileCategory::Source},
    ExtEntry{".pyi", "Python", FileCategory::Source},
    ExtEntry{".js", "JavaScript", FileCategory::Source},
    ExtEntry{".jsx", "JavaScript", FileCategory::Source},
    ExtEntry{".mjs", "JavaScript", FileCategory::Source},
    ExtEntry{".cjs", "JavaScript", FileCategory::Source},
    ExtEntry{".ts", "TypeScript", FileCategory::Source},
    ExtEntry{".tsx", "TypeScript", FileCategory::Source},
    ExtEntry{".java", "Java", FileCategory::Source},
    ExtEntry{".kt", "Kotlin", FileCategory::Source},
    ExtEntry{".kts", "Kotlin", FileCategory::Source},
    ExtEntry{".go", "Go", FileCategory::Source},
    ExtEntry{".rs", "Rust", FileCategory::Source},
    ExtEntry{".c", "C", FileCategory::Source},
    ExtEntry{".h", "C", FileCategory::Source},
    ExtEntry{".cc", "C++", FileCategory::Source},
    ExtEntry{".cpp", "C++", FileCategory::Source},
    ExtEntry{".cxx", "C++", FileCategory::Source},
    ExtEntry{".hpp", "C++", FileCategory::Source},
    ExtEntry{".hh", "C++", FileCategory::Source},
    ExtEntry{".cs", "C#", FileCategory::Source},
    ExtEntry{".rb", "Ruby", FileCategory::Source},
    ExtEntry{".php", "PHP", FileCategory::Source},
    ExtEntry{".swift", "Swift", FileCategory::Source},
    ExtEntry{".scala", "Scala", FileCategory::Source},
    ExtEntry{".sh", "Shell", FileCategory::Source},
    ExtEntry{".bash", "Shell", FileCategory::Source},
    ExtEntry{".md", "Markdown", FileCategory::Documentation},
    ExtEntry{".markdown", "Markdown", FileCategory::Documentation},
    ExtEntry{".rst", "reStructuredText", FileCategory::Documentation},
    ExtEntry{".txt", "Text", FileCategory::Documentation},
    ExtEntry{".adoc", "AsciiDoc", FileCategory::Documentation},
    ExtEntry{".html", "HTML", FileCategory::Documentation},
    ExtEntry{".toml", "TOML", FileCategory::Other},
    ExtEntry{".yaml", "YAML", FileCategory::Other},
    ExtEntry{".yml", "YAML", FileCategory::Other},
    ExtEntry{".json", "JSON", FileCategory::Other},
    ExtEntry{".cfg", "INI", FileCategory::Other},
    ExtEntry{".ini", "INI", FileCategory::Other},
    ExtEntry{".env", "Dotenv", FileCategory::Other},
    ExtEntry{".xml", "XML", FileCategory::Other},
    ExtEntry{".lock", "Lockfile", FileCategory::Other},
};

const ExtEntry* lookup(std::string_view path) {
  const std::string ext = extension_of(path);
  for (const auto& e : kExtensions)
    if (e.ext == ext) return &e;
  return nullptr;
}

}  // namespace

std::string_view to_string(FileCategory c) {
  switch (c) {
    case FileCategory::Source: return "source";
    case FileCategory::Documentation: return "documentation";
    case FileCategory::Other: return "other";
  }
  return "other";
}

std::string_view basename_of(std::string_view path) {
  const auto slash = path.rfind('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

std::string_view dirname_of(std::string_view path) {
  const auto slash = path.rfind('/');
  return slash == std::string_view::npos ? std::string_view{} : path.substr(0, slash);
}

std::string extension_of(std::string_view path) {
  const std::string_view base = basename_of(path);
  const auto dot = base.rfind('.');
  if (dot == std::string_view::npos || dot == 0) {
    // Dotfiles such as ".env" use the whole name as extension.
    if (dot == 0) {
      std::string ext(base);
      std::transform(ext.begin(), ext.end(), ext.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      return ext;
    }
    return {};
  }
  std::string ext(base.substr(dot));
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::string language_for_path(std::string_view path) {
  const ExtEntry* e = lookup(path);
  return e ? std::string(e->language) : std::string("Text");
}

FileCategory category_for_path(std::string_view path) {
  const ExtEntry* e = lookup(path);
  if (e) return e->category;
  const std::string_view base = basename_of(path);
  if (base == "README" || base == "LICENSE" || base == "CHANGELOG" || base == "AUTHORS")
    return FileCategory::Documentation;
  return FileCategory::Other;
}

}  // namespace repograph
