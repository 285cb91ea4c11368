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
#include <map>
#include <vector>

namespace repograph {

// Undirected weighted graph on nodes 0..n-1. Parallel edges accumulate. A
// self-loop of weight w adds 2w to the node's degree, so aggregated
// communities keep their internal weight.
class WeightedGraph {
 public:
  explicit WeightedGraph(std::size_t n = 0) : adj_(n), self_(n, 0.0) {}

  std::size_t size() const { return adj_.size(); }
  void add_edge(std::size_t u, std::size_t v, double w);
  const std::map<std::size_t, double>& neighbors(std::size_t u) const { return adj_[u]; }  // excludes u
  double self_loop(std::size_t u) const { return self_[u]; }
  double degree(std::size_t u) const;
  double total_weight() const { return total_; }  // m

 private:
  std::vector<std::map<std::size_t, double>> adj_;
  std::vector<double> self_;
  double total_ = 0.0;
};

// Newman modularity Q = sum_c [in_c/(2m) - resolution * (tot_c/(2m))^2];
// 0 for a graph without edges.
double modularity(const WeightedGraph& g, const std::vector<int>& community, double resolution = 1.0);

// Renumbers labels 1..K in order of first appearance.
std::vector<int> canonical_labels(const std::vector<int>& labels);

struct LouvainResult {
  std::vector<int> community;        // canonical, 1..K
  double modularity = 0.0;
  std::vector<double> pass_modularity;  // Q after each aggregation pass
  int passes = 0;
};

// Two-phase Louvain: local moving (nodes visited in index order, a move
// needs a strictly positive gain, ties go to the lower community) followed
// by aggregation, repeated until nothing moves. Local moving is then
// re-run on the original nodes and the whole procedure restarts from the
// result until no single-node move improves Q. Deterministic.
LouvainResult louvain(const WeightedGraph& g, double resolution = 1.0);

// True when no single node can move to another (possibly new) community
// and raise Q by more than `tolerance`.
bool is_local_optimum(const WeightedGraph& g, const std::vector<int>& community, double resolution = 1.0,
                      double tolerance = 1e-12);

struct LabelPropagationResult {
  std::vector<int> labels;  // canonical, 1..K
  int sweeps = 0;
  bool converged = false;
};

// Asynchronous label propagation. Each sweep visits nodes in a seeded
// random order; a node keeps its label when it is among the heaviest
// neighbour labels, otherwise it takes one of them chosen by the seeded
// generator. Stops after a sweep without changes or `max_sweeps`.
// Identical (graph, seed) pairs give identical results on every platform.
LabelPropagationResult label_propagation(const WeightedGraph& g, std::uint64_t seed, int max_sweeps = 100);

// Every node carries one of the heaviest labels among its neighbours
// (isolated nodes always qualify).
bool is_label_fixed_point(const WeightedGraph& g, const std::vector<int>& labels);

}  // namespace repograph
