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

#include <span>

#include "repograph/core/types.hpp"

namespace repograph {

// Cosine similarity (dot product over the product of L2 norms), accumulated
// in double in index order and clamped to [-1, 1]. Throws DimensionError on
// a length mismatch and ValidationError for an empty or zero vector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);
double cosine_similarity(std::span<const float> a, std::span<const float> b);
double cosine_similarity(const Embedding& a, const Embedding& b);

}  // namespace repograph
