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

#include "repograph/retrieval/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "repograph/core/error.hpp"

namespace repograph {

namespace {

template <typename T>
double cosine(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size())
    throw DimensionError("cosine similarity of vectors with dims " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  if (a.empty()) throw ValidationError("cosine similarity of empty vectors");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i], y = b[i];
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0) throw ValidationError("cosine similarity of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) { return cosine(a, b); }
double cosine_similarity(std::span<const float> a, std::span<const float> b) { return cosine(a, b); }
double cosine_similarity(const Embedding& a, const Embedding& b) { return cosine(a.values(), b.values()); }

}  // namespace repograph
