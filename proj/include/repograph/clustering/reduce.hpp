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
#include <vector>

namespace repograph {

using PointSet = std::vector<std::vector<double>>;

struct ManifoldOptions {
  int n_components = 8;
  int n_neighbors = 15;
  double min_dist = 0.1;
  double spread = 1.0;
  int n_epochs = 200;
  int negative_sample_rate = 5;
  double learning_rate = 1.0;
  std::uint64_t seed = 42;
};

// Fits the low-dimensional similarity curve 1 / (1 + a d^(2b)) to the
// target membership for (min_dist, spread).
struct CurveParams {
  double a;
  double b;
};
CurveParams fit_curve(double min_dist, double spread);

// Manifold reduction of Euclidean points: exact k-nearest-neighbour graph,
// fuzzy membership weights with per-point bandwidth, symmetric union, PCA
// initialisation and seeded stochastic layout optimisation with negative
// sampling. Deterministic for a given seed.
PointSet manifold_reduce(const PointSet& points, const ManifoldOptions& options = {});

// Principal-component projection to `dims` columns (sign fixed so the
// largest-magnitude entry of each component is positive).
PointSet pca_project(const PointSet& points, int dims);

double squared_distance(const std::vector<double>& a, const std::vector<double>& b);

// Seeded k-means++ initialisation then Lloyd iterations; best of `restarts`
// by inertia. Labels are 0..k-1.
std::vector<int> kmeans(const PointSet& points, int k, std::uint64_t seed, int restarts = 4, int max_iter = 100);

// DBSCAN. Noise points get label -1, clusters are 0.. in discovery order.
std::vector<int> dbscan(const PointSet& points, double eps, int min_points);

// Mean silhouette over points whose label is >= 0 and not `skip_label`.
// Points alone in their cluster score 0. Fewer than two clusters gives 0.
double silhouette(const PointSet& points, const std::vector<int>& labels, int skip_label = -1);

}  // namespace repograph
