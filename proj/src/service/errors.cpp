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

#include "repograph/service/errors.hpp"

#include "repograph/core/error.hpp"

namespace repograph {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return "validation";
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const SchemaError*>(&e)) return "schema";
  if (dynamic_cast<const UnsupportedVersionError*>(&e)) return "unsupported_version";
  if (dynamic_cast<const NotFoundError*>(&e)) return "not_found";
  if (dynamic_cast<const RevisionError*>(&e)) return "revision";
  if (dynamic_cast<const ProviderError*>(&e)) return "provider";
  if (dynamic_cast<const DimensionError*>(&e)) return "dimension";
  if (dynamic_cast<const UndefinedMetricError*>(&e)) return "undefined_metric";
  return "internal";
}

int http_status(const std::exception& e) {
  const std::string k = error_kind(e);
  if (k == "validation" || k == "parse" || k == "schema" || k == "unsupported_version") return 400;
  if (k == "not_found") return 404;
  if (k == "revision") return 409;
  if (k == "provider" || k == "dimension") return 503;
  return 500;
}

}  // namespace repograph
