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
#include <string>
#include <string_view>

namespace repograph::prompts {

// Templates live in prompts/*.md and are compiled in. Both the node
// summarizer and the query preprocessor start with the same instruction
// block, so queries and summaries are phrased alike.
std::string_view instructions();
std::string_view summarize_template();
std::string_view preprocess_query_template();
std::string_view discover_files_template();
std::string_view label_cluster_template();

// Short digest of all templates; part of every cache key.
const std::string& version();

// Replaces {{name}} placeholders. {{instructions}} is always available.
// Throws ValidationError for a placeholder without a value.
std::string render(std::string_view tmpl, const std::map<std::string, std::string>& vars);

}  // namespace repograph::prompts
