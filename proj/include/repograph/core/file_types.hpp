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

#include <string>
#include <string_view>

namespace repograph {

enum class FileCategory { Source, Documentation, Other };

std::string_view to_string(FileCategory c);

// Lower-cased extension including the dot ("" when none).
std::string extension_of(std::string_view path);
std::string_view basename_of(std::string_view path);
std::string_view dirname_of(std::string_view path);

// Language name from the extension table ("Python", "Markdown", ...);
// "Text" for unknown extensions.
std::string language_for_path(std::string_view path);
FileCategory category_for_path(std::string_view path);

}  // namespace repograph
