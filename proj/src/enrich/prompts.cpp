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

#include "repograph/enrich/prompts.hpp"

#include "repograph/core/digest.hpp"
#include "repograph/core/error.hpp"
#include "repograph/enrich/providers.hpp"

namespace repograph::prompts {

namespace detail {
extern const std::string_view kInstructions;
extern const std::string_view kSummarize;
extern const std::string_view kPreprocessQuery;
extern const std::string_view kDiscoverFiles;
extern const std::string_view kLabelCluster;
}  // namespace detail

std::string_view instructions() { return detail::kInstructions; }
std::string_view summarize_template() { return detail::kSummarize; }
std::string_view preprocess_query_template() { return detail::kPreprocessQuery; }
std::string_view discover_files_template() { return detail::kDiscoverFiles; }
std::string_view label_cluster_template() { return detail::kLabelCluster; }

const std::string& version() {
  static const std::string v = [] {
    FieldHasher h;
    for (auto t : {instructions(), summarize_template(), preprocess_query_template(), discover_files_template()})
      h.add(t);
    return h.finish_hex().substr(0, 12);
  }();
  return v;
}

std::string render(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    out.append(tmpl.substr(pos, open - pos));
    const std::string name(tmpl.substr(open + 2, close - open - 2));
    if (name == "instructions") {
      std::string_view block = instructions();
      while (!block.empty() && block.back() == '\n') block.remove_suffix(1);
      out.append(block);
    } else {
      const auto it = vars.find(name);
      if (it == vars.end()) throw ValidationError("prompt placeholder '" + name + "' has no value");
      out.append(it->second);
    }
    pos = close + 2;
  }
  out.append(tmpl.substr(pos));
  return out;
}

}  // namespace repograph::prompts

namespace repograph {

std::string SummaryRequest::prompt() const {
  return prompts::render(prompts::summarize_template(),
                         {{"kind", std::string(to_string(kind))},
                          {"name", name},
                          {"path", path},
                          {"docstring", docstring && !docstring->empty() ? *docstring : "(none)"},
                          {"content", content},
                          {"context", context}});
}

}  // namespace repograph
