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

#include "repograph/clustering/community.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "repograph/core/error.hpp"

namespace repograph {

void WeightedGraph::add_edge(std::size_t u, std::size_t v, double w) {
  if (u >= size() || v >= size()) throw ValidationError("edge endpoint out of range");
  if (!(w >= 0.0)) throw ValidationError("edge weight must be non-negative");
  if (w == 0.0) return;
  if (u == v) {
    self_[u] += w;
  } else {
    adj_[u][v] += w;
    adj_[v][u] += w;
  }
  total_ += w;
}

double WeightedGraph::degree(std::size_t u) const {
  double k = 2.0 * self_[u];
  for (const auto& [v, w] : adj_[u]) k += w;
  return k;
}

double modularity(const WeightedGraph& g, const std::vector<int>& community, double resolution) {
  if (community.size() != g.size()) throw ValidationError("partition size does not match the graph");
  const double m = g.total_weight();
  if (m <= 0.0) return 0.0;
  std::map<int, double> in, tot;
  for (std::size_t u = 0; u < g.size(); ++u) {
    const int c = community[u];
    tot[c] += g.degree(u);
    in[c] += 2.0 * g.self_loop(u);
    for (const auto& [v, w] : g.neighbors(u))
      if (community[v] == c) in[c] += w;
  }
  double q = 0.0;
  for (const auto& [c, t] : tot) q += in[c] / (2.0 * m) - resolution * (t / (2.0 * m)) * (t / (2.0 * m));
  return q;
}

std::vector<int> canonical_labels(const std::vector<int>& labels) {
  std::unordered_map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [it, inserted] = remap.emplace(labels[i], static_cast<int>(remap.size()) + 1);
    out[i] = it->second;
  }
  return out;
}

namespace {

// Community indices are kept in 0..n-1 during optimisation.
std::vector<int> dense_labels(const std::vector<int>& labels) {
  auto out = canonical_labels(labels);
  for (int& c : out) --c;
  return out;
}

double gain_epsilon(double m) { return 1e-12 * std::max(1.0, m); }

// One local-moving phase. Returns whether any node changed community.
bool local_moving(const WeightedGraph& g, std::vector<int>& comm, double resolution) {
  const std::size_t n = g.size();
  const double m = g.total_weight();
  if (m <= 0.0) return false;
  std::vector<double> k(n), tot(n, 0.0);
  std::vector<std::size_t> members(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = g.degree(i);
    tot[comm[i]] += k[i];
    ++members[comm[i]];
  }
  const double eps = gain_epsilon(m);
  bool any = false;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int ci = comm[i];
      std::map<int, double> links;
      for (const auto& [j, w] : g.neighbors(i)) links[comm[j]] += w;
      tot[ci] -= k[i];
      --members[ci];
      const auto gain = [&](int c) {
        const auto it = links.find(c);
        const double w = it == links.end() ? 0.0 : it->second;
        return w - resolution * tot[c] * k[i] / (2.0 * m);
      };
      int best = ci;
      double best_gain = gain(ci);
      for (const auto& [c, w] : links) {
        if (c == ci) continue;
        const double gc = gain(c);
        if (gc > best_gain + eps) {
          best = c;
          best_gain = gc;
        }
      }
      // Isolation has gain 0 and needs an empty community.
      if (best_gain < -eps && members[ci] > 0) {
        best = static_cast<int>(std::find(members.begin(), members.end(), 0) - members.begin());
        best_gain = 0.0;
      }
      tot[best] += k[i];
      ++members[best];
      if (best != ci) {
        comm[i] = best;
        moved = any = true;
      }
    }
  }
  return any;
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<int>& comm, std::size_t k) {
  WeightedGraph out(k);
  for (std::size_t u = 0; u < g.size(); ++u) {
    const auto cu = static_cast<std::size_t>(comm[u]);
    if (g.self_loop(u) > 0.0) out.add_edge(cu, cu, g.self_loop(u));
    for (const auto& [v, w] : g.neighbors(u))
      if (u < v) out.add_edge(cu, static_cast<std::size_t>(comm[v]), w);
  }
  return out;
}

std::size_t count_labels(const std::vector<int>& dense) {
  int mx = -1;
  for (int c : dense) mx = std::max(mx, c);
  return static_cast<std::size_t>(mx + 1);
}

}  // namespace

LouvainResult louvain(const WeightedGraph& g, double resolution) {
  LouvainResult r;
  std::vector<int> part(g.size());
  for (std::size_t i = 0; i < part.size(); ++i) part[i] = static_cast<int>(i);

  while (true) {
    // Multilevel phase starting from the current partition of the original nodes.
    part = dense_labels(part);
    WeightedGraph level = aggregate(g, part, count_labels(part));
    while (true) {
      std::vector<int> comm(level.size());
      for (std::size_t i = 0; i < comm.size(); ++i) comm[i] = static_cast<int>(i);
      const bool moved = local_moving(level, comm, resolution);
      if (!moved) break;
      comm = dense_labels(comm);
      for (int& p : part) p = comm[static_cast<std::size_t>(p)];
      ++r.passes;
      r.pass_modularity.push_back(modularity(g, part, resolution));
      level = aggregate(level, comm, count_labels(comm));
    }
    // A merge higher up can leave single original nodes misplaced.
    if (!local_moving(g, part, resolution)) break;
    ++r.passes;
    r.pass_modularity.push_back(modularity(g, part, resolution));
  }
  r.community = canonical_labels(part);
  r.modularity = modularity(g, r.community, resolution);
  return r;
}

bool is_local_optimum(const WeightedGraph& g, const std::vector<int>& community, double resolution,
                      double tolerance) {
  const double m = g.total_weight();
  if (m <= 0.0) return true;
  std::map<int, double> tot;
  for (std::size_t i = 0; i < g.size(); ++i) tot[community[i]] += g.degree(i);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ki = g.degree(i);
    const int ci = community[i];
    std::map<int, double> links;
    for (const auto& [j, w] : g.neighbors(i)) links[community[j]] += w;
    const double tot_ci = tot[ci] - ki;
    const double stay = links[ci] - resolution * tot_ci * ki / (2.0 * m);
    // Moving to an empty community has gain 0.
    const double alone = 0.0;
    if ((alone - stay) / m > tolerance) return false;
    for (const auto& [c, w] : links) {
      if (c == ci) continue;
      const double gc = w - resolution * tot[c] * ki / (2.0 * m);
      if ((gc - stay) / m > tolerance) return false;
    }
  }
  return true;
}

namespace {

std::vector<int> heaviest_labels(const WeightedGraph& g, const std::vector<int>& labels, std::size_t i) {
  std::map<int, double> weight;
  for (const auto& [j, w] : g.neighbors(i)) weight[labels[j]] += w;
  double best = 0.0;
  for (const auto& [l, w] : weight) best = std::max(best, w);
  std::vector<int> out;
  for (const auto& [l, w] : weight)
    if (w >= best - 1e-12 * std::max(1.0, best)) out.push_back(l);
  return out;
}

}  // namespace

LabelPropagationResult label_propagation(const WeightedGraph& g, std::uint64_t seed, int max_sweeps) {
  const std::size_t n = g.size();
  std::vector<int> labels(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(i);
    order[i] = i;
  }
  // mt19937_64 output is fixed by the standard; shuffling and picks avoid
  // library distributions so results do not depend on the standard library.
  std::mt19937_64 rng(seed);
  LabelPropagationResult r;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    bool changed = false;
    for (std::size_t i : order) {
      if (g.neighbors(i).empty()) continue;
      const auto best = heaviest_labels(g, labels, i);
      if (std::find(best.begin(), best.end(), labels[i]) != best.end()) continue;
      labels[i] = best[rng() % best.size()];
      changed = true;
    }
    r.sweeps = sweep;
    if (!changed) {
      r.converged = true;
      break;
    }
  }
  if (max_sweeps <= 0 || n == 0) r.converged = is_label_fixed_point(g, labels);
  r.labels = canonical_labels(labels);
  return r;
}

bool is_label_fixed_point(const WeightedGraph& g, const std::vector<int>& labels) {
  if (labels.size() != g.size()) throw ValidationError("label count does not match the graph");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.neighbors(i).empty()) continue;
    const auto best = heaviest_labels(g, labels, i);
    if (std::find(best.begin(), best.end(), labels[i]) == best.end()) return false;
  }
  return true;
}

}  // namespace repograph
