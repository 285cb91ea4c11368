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

#include "repograph/clustering/reduce.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "repograph/core/error.hpp"

namespace repograph {

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t check_points(const PointSet& points) {
  if (points.empty()) return 0;
  const std::size_t d = points.front().size();
  for (const auto& p : points)
    if (p.size() != d) throw DimensionError("points have mixed dimensions");
  return d;
}

double curve_loss(double a, double b, double min_dist, double spread) {
  double loss = 0.0;
  for (int i = 0; i < 300; ++i) {
    const double d = 3.0 * spread * i / 299.0;
    const double target = d < min_dist ? 1.0 : std::exp(-(d - min_dist) / spread);
    const double model = 1.0 / (1.0 + a * std::pow(d, 2.0 * b));
    loss += (model - target) * (model - target);
  }
  return loss;
}

}  // namespace

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

CurveParams fit_curve(double min_dist, double spread) {
  if (!(spread > 0.0) || min_dist < 0.0) throw ValidationError("invalid curve parameters");
  CurveParams best{1.0, 1.0};
  double best_loss = std::numeric_limits<double>::infinity();
  for (double a = 0.05; a <= 10.0; a += 0.05)
    for (double b = 0.2; b <= 2.0; b += 0.02) {
      const double l = curve_loss(a, b, min_dist, spread);
      if (l < best_loss) {
        best_loss = l;
        best = {a, b};
      }
    }
  // Pattern search refinement.
  double step_a = 0.05, step_b = 0.02;
  while (step_a > 1e-7) {
    bool improved = false;
    for (const auto& [da, db] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
      const CurveParams c{best.a + da * step_a, best.b + db * step_b};
      if (c.a <= 0.0 || c.b <= 0.0) continue;
      const double l = curve_loss(c.a, c.b, min_dist, spread);
      if (l < best_loss) {
        best_loss = l;
        best = c;
        improved = true;
      }
    }
    if (!improved) {
      step_a /= 2.0;
      step_b /= 2.0;
    }
  }
  return best;
}

PointSet pca_project(const PointSet& points, int dims) {
  const std::size_t n = points.size();
  const std::size_t d = check_points(points);
  if (dims <= 0) throw ValidationError("dims must be positive");
  PointSet out(n, std::vector<double>(static_cast<std::size_t>(dims), 0.0));
  if (n == 0 || d == 0) return out;
  Eigen::MatrixXd x(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) x(i, j) = points[i][j];
  x.rowwise() -= x.colwise().mean();
  // Eigen-decompose the smaller of the Gram and covariance matrices.
  Eigen::MatrixXd scores;
  if (n <= d) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x * x.transpose());
    const Eigen::VectorXd vals = es.eigenvalues();
    scores = Eigen::MatrixXd::Zero(n, dims);
    for (int c = 0; c < dims && c < static_cast<int>(n); ++c) {
      const int idx = static_cast<int>(n) - 1 - c;
      if (vals(idx) <= 1e-12) break;
      scores.col(c) = es.eigenvectors().col(idx) * std::sqrt(vals(idx));
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * x);
    scores = Eigen::MatrixXd::Zero(n, dims);
    for (int c = 0; c < dims && c < static_cast<int>(d); ++c) {
      const int idx = static_cast<int>(d) - 1 - c;
      if (es.eigenvalues()(idx) <= 1e-12) break;
      scores.col(c) = x * es.eigenvectors().col(idx);
    }
  }
  for (int c = 0; c < dims; ++c) {
    Eigen::Index arg = 0;
    scores.col(c).cwiseAbs().maxCoeff(&arg);
    if (scores(arg, c) < 0.0) scores.col(c) *= -1.0;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < dims; ++c) out[i][static_cast<std::size_t>(c)] = scores(static_cast<Eigen::Index>(i), c);
  return out;
}

PointSet manifold_reduce(const PointSet& points, const ManifoldOptions& opt) {
  const std::size_t n = points.size();
  check_points(points);
  if (opt.n_components <= 0 || opt.n_neighbors < 2 || opt.n_epochs < 0)
    throw ValidationError("invalid reduction options");
  const auto dims = static_cast<std::size_t>(opt.n_components);
  if (n <= 1) return PointSet(n, std::vector<double>(dims, 0.0));

  // Exact neighbours, ties by index.
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(opt.n_neighbors), n - 1);
  std::vector<std::vector<std::pair<double, std::size_t>>> knn(n);
  std::vector<std::pair<double, std::size_t>> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) row.emplace_back(std::sqrt(squared_distance(points[i], points[j])), j);
    std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k), row.end());
    knn[i].assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k));
  }

  // Fuzzy membership with per-point connectivity distance and bandwidth.
  const double target = std::log2(static_cast<double>(k));
  std::map<std::pair<std::size_t, std::size_t>, double> directed;
  for (std::size_t i = 0; i < n; ++i) {
    double rho = 0.0, mean = 0.0;
    for (const auto& [d, j] : knn[i]) {
      mean += d;
      if (rho == 0.0 && d > 0.0) rho = d;
    }
    mean /= static_cast<double>(k);
    double lo = 0.0, hi = std::numeric_limits<double>::infinity(), sigma = 1.0;
    for (int it = 0; it < 64; ++it) {
      double psum = 0.0;
      for (const auto& [d, j] : knn[i]) psum += std::exp(-std::max(0.0, d - rho) / sigma);
      if (std::fabs(psum - target) < 1e-5) break;
      if (psum > target) {
        hi = sigma;
        sigma = (lo + hi) / 2.0;
      } else {
        lo = sigma;
        sigma = std::isinf(hi) ? sigma * 2.0 : (lo + hi) / 2.0;
      }
    }
    sigma = std::max(sigma, 1e-3 * (mean > 0.0 ? mean : 1.0));
    for (const auto& [d, j] : knn[i]) directed[{i, j}] = std::exp(-std::max(0.0, d - rho) / sigma);
  }
  std::map<std::pair<std::size_t, std::size_t>, double> sym;
  for (const auto& [e, w] : directed) {
    const auto rev = directed.find({e.second, e.first});
    const double wr = rev == directed.end() ? 0.0 : rev->second;
    sym[e] = w + wr - w * wr;
    sym[{e.second, e.first}] = w + wr - w * wr;
  }
  double max_w = 0.0;
  for (const auto& [e, w] : sym) max_w = std::max(max_w, w);
  struct Edge {
    std::size_t head, tail;
    double per_sample;
  };
  std::vector<Edge> edges;
  for (const auto& [e, w] : sym)
    if (opt.n_epochs == 0 || w >= max_w / opt.n_epochs) edges.push_back({e.first, e.second, max_w / w});

  std::mt19937_64 rng(opt.seed);
  PointSet y = pca_project(points, opt.n_components);
  double extent = 0.0;
  for (const auto& p : y)
    for (double v : p) extent = std::max(extent, std::fabs(v));
  const double scale = extent > 0.0 ? 10.0 / extent : 0.0;
  for (auto& p : y)
    for (double& v : p) v = v * scale + (unit_uniform(rng) - 0.5) * 1e-4 * (scale > 0.0 ? 1.0 : 1e4);

  const auto [a, b] = fit_curve(opt.min_dist, opt.spread);
  const auto clip = [](double v) { return std::clamp(v, -4.0, 4.0); };
  std::vector<double> next_sample(edges.size()), next_neg(edges.size()), per_neg(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    next_sample[e] = edges[e].per_sample;
    per_neg[e] = edges[e].per_sample / opt.negative_sample_rate;
    next_neg[e] = per_neg[e];
  }
  for (int epoch = 0; epoch < opt.n_epochs; ++epoch) {
    const double alpha = opt.learning_rate * (1.0 - static_cast<double>(epoch) / opt.n_epochs);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (next_sample[e] > epoch) continue;
      auto& yi = y[edges[e].head];
      auto& yj = y[edges[e].tail];
      const double d2 = squared_distance(yi, yj);
      double coeff = 0.0;
      if (d2 > 0.0) coeff = -2.0 * a * b * std::pow(d2, b - 1.0) / (a * std::pow(d2, b) + 1.0);
      for (std::size_t c = 0; c < dims; ++c) {
        const double g = clip(coeff * (yi[c] - yj[c])) * alpha;
        yi[c] += g;
        yj[c] -= g;
      }
      next_sample[e] += edges[e].per_sample;
      const auto n_neg = static_cast<int>((epoch - next_neg[e]) / per_neg[e]);
      for (int p = 0; p < n_neg; ++p) {
        const std::size_t other = rng() % n;
        if (other == edges[e].head) continue;
        const auto& yk = y[other];
        const double dk = squared_distance(yi, yk);
        const double rep = dk > 0.0 ? 2.0 * b / ((0.001 + dk) * (a * std::pow(dk, b) + 1.0)) : 0.0;
        for (std::size_t c = 0; c < dims; ++c) {
          const double g = rep > 0.0 ? clip(rep * (yi[c] - yk[c])) : 4.0;
          yi[c] += g * alpha;
        }
      }
      next_neg[e] += n_neg * per_neg[e];
    }
  }
  return y;
}

std::vector<int> kmeans(const PointSet& points, int k, std::uint64_t seed, int restarts, int max_iter) {
  const std::size_t n = points.size();
  check_points(points);
  if (k < 1) throw ValidationError("k must be at least 1");
  if (n == 0) return {};
  const auto kk = std::min<std::size_t>(static_cast<std::size_t>(k), n);
  std::mt19937_64 rng(seed);
  std::vector<int> best;
  double best_inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, restarts); ++r) {
    PointSet centers{points[rng() % n]};
    std::vector<double> d2(n);
    while (centers.size() < kk) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        d2[i] = std::numeric_limits<double>::infinity();
        for (const auto& c : centers) d2[i] = std::min(d2[i], squared_distance(points[i], c));
        total += d2[i];
      }
      std::size_t pick = 0;
      if (total <= 0.0) {
        pick = rng() % n;
      } else {
        double t = unit_uniform(rng) * total;
        for (pick = 0; pick + 1 < n; ++pick) {
          t -= d2[pick];
          if (t < 0.0) break;
        }
      }
      centers.push_back(points[pick]);
    }
    std::vector<int> labels(n, -1);
    for (int it = 0; it < max_iter; ++it) {
      bool changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        int arg = 0;
        double bd = squared_distance(points[i], centers[0]);
        for (std::size_t c = 1; c < kk; ++c) {
          const double d = squared_distance(points[i], centers[c]);
          if (d < bd) {
            bd = d;
            arg = static_cast<int>(c);
          }
        }
        if (labels[i] != arg) {
          labels[i] = arg;
          changed = true;
        }
      }
      if (!changed) break;
      PointSet sums(kk, std::vector<double>(points[0].size(), 0.0));
      std::vector<std::size_t> counts(kk, 0);
      for (std::size_t i = 0; i < n; ++i) {
        auto& s = sums[static_cast<std::size_t>(labels[i])];
        for (std::size_t c = 0; c < s.size(); ++c) s[c] += points[i][c];
        ++counts[static_cast<std::size_t>(labels[i])];
      }
      for (std::size_t c = 0; c < kk; ++c)
        if (counts[c] > 0)
          for (std::size_t j = 0; j < sums[c].size(); ++j) centers[c][j] = sums[c][j] / static_cast<double>(counts[c]);
    }
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) inertia += squared_distance(points[i], centers[static_cast<std::size_t>(labels[i])]);
    if (inertia < best_inertia) {
      best_inertia = inertia;
      best = labels;
    }
  }
  std::map<int, int> remap;
  for (int& l : best) l = remap.emplace(l, static_cast<int>(remap.size())).first->second;
  return best;
}

std::vector<int> dbscan(const PointSet& points, double eps, int min_points) {
  const std::size_t n = points.size();
  check_points(points);
  if (!(eps > 0.0) || min_points < 1) throw ValidationError("invalid density parameters");
  const double eps2 = eps * eps;
  std::vector<std::vector<std::size_t>> nb(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (squared_distance(points[i], points[j]) <= eps2) nb[i].push_back(j);
  const auto core = [&](std::size_t i) { return nb[i].size() >= static_cast<std::size_t>(min_points); };
  std::vector<int> labels(n, -2);  // -2 unvisited
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != -2) continue;
    if (!core(i)) {
      labels[i] = -1;
      continue;
    }
    const int c = next++;
    labels[i] = c;
    std::vector<std::size_t> queue(nb[i].begin(), nb[i].end());
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::size_t j = queue[q];
      if (labels[j] == -1) labels[j] = c;
      if (labels[j] != -2) continue;
      labels[j] = c;
      if (core(j)) queue.insert(queue.end(), nb[j].begin(), nb[j].end());
    }
  }
  return labels;
}

double silhouette(const PointSet& points, const std::vector<int>& labels, int skip_label) {
  const std::size_t n = points.size();
  if (labels.size() != n) throw ValidationError("label count does not match the points");
  std::vector<std::size_t> idx;
  std::map<int, std::size_t> sizes;
  for (std::size_t i = 0; i < n; ++i)
    if (labels[i] >= 0 && labels[i] != skip_label) {
      idx.push_back(i);
      ++sizes[labels[i]];
    }
  if (sizes.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i : idx) {
    if (sizes[labels[i]] == 1) continue;
    std::map<int, double> sum;
    for (std::size_t j : idx)
      if (j != i) sum[labels[j]] += std::sqrt(squared_distance(points[i], points[j]));
    const double a = sum[labels[i]] / static_cast<double>(sizes[labels[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (const auto& [l, s] : sum)
      if (l != labels[i]) b = std::min(b, s / static_cast<double>(sizes[l]));
    const double m = std::max(a, b);
    if (m > 0.0) total += (b - a) / m;
  }
  return total / static_cast<double>(idx.size());
}

}  // namespace repograph
