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

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "repograph/core/graph.hpp"
#include "repograph/core/query.hpp"

namespace repograph::testing {

struct RandomGraphOptions {
  int folders = 3;
  int files = 6;
  int entities = 10;
  int extra_edges = 15;  // Calls/Inherits/Refers/Tests attempts
  int embedding_dim = 0;  // 0 = no embeddings
};

// Structurally valid random graph (Root, Contains forest, entities owned by
// files) with randomly sprinkled relation edges that respect endpoint kinds.
KnowledgeGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& opt);

std::vector<float> random_unit_vector(std::mt19937_64& rng, int dim);

// Reference traversal: level-synchronous expansion by scanning the full edge
// list each level. Deliberately independent of the adjacency-list BFS.
std::set<NodeId> reference_reachable(const KnowledgeGraph& g, const std::set<NodeId>& seeds,
                                     const TraversalSpec& spec);

// Direct evaluation of sum(a*b) / (sqrt(sum a^2) * sqrt(sum b^2)).
double reference_cosine(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace repograph::testing
