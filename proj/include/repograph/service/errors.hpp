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

#include <exception>
#include <string>

namespace repograph {

// Short name of a library error ("validation", "not_found", ...), or
// "internal" for anything else.
std::string error_kind(const std::exception& e);

// 400 validation/parse/schema/version, 404 not found, 409 revision
// mismatch, 503 provider failure, 500 otherwise.
int http_status(const std::exception& e);

}  // namespace repograph
