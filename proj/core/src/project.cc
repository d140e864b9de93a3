// Copyright 2026 The trigviz Authors.
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

#include "trigviz/project.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "canonical_json.h"
#include "trigviz/csv.h"
#include "trigviz/error.h"
#include "trigviz/random.h"

namespace trigviz {

std::optional<ProjectionMethod> parse_projection_method(std::string_view name) {
  if (name == "pca") return ProjectionMethod::kPca;
  if (name == "umap") return ProjectionMethod::kUmap;
  return std::nullopt;
}

std::string_view projection_method_name(ProjectionMethod method) {
  return method == ProjectionMethod::kPca ? "pca" : "umap";
}

// ---------------------------------------------------------------------------
// PCA

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double sparse_dot(const DocumentVector& x, std::span<const double> dense) {
  double sum = 0.0;
  for (const auto& [index, value] : x.entries) sum += value * dense[index];
  return sum;
}

// Implicit sample covariance of mean-centred sparse rows.
class Covariance {
 public:
  Covariance(std::span<const DocumentVector> rows, std::size_t dimension)
      : rows_(rows), mean_(dimension, 0.0) {
    for (const DocumentVector& x : rows) {
      for (const auto& [index, value] : x.entries) {
        if (index >= dimension) {
          throw Error(ErrorKind::kInvalidArgument, "vector index outside the PCA dimension");
        }
        mean_[index] += value;
      }
    }
    for (double& m : mean_) m /= static_cast<double>(rows.size());
  }

  std::span<const double> mean() const { return mean_; }

  // Centred projection (x_i - mean) . u.
  double project(std::size_t i, std::span<const double> u) const {
    return sparse_dot(rows_[i], u) - dot(mean_, u);
  }

  void apply(std::span<const double> u, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    const double mu = dot(mean_, u);
    double z_sum = 0.0;
    for (const DocumentVector& x : rows_) {
      const double z = sparse_dot(x, u) - mu;
      z_sum += z;
      for (const auto& [index, value] : x.entries) out[index] += z * value;
    }
    const double inv = 1.0 / static_cast<double>(rows_.size() - 1);
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = (out[d] - mean_[d] * z_sum) * inv;
  }

  double trace() const {
    double total = 0.0;
    const double mean_sq = dot(mean_, mean_);
    for (const DocumentVector& x : rows_) {
      double xx = 0.0, xm = 0.0;
      for (const auto& [index, value] : x.entries) {
        xx += value * value;
        xm += value * mean_[index];
      }
      total += xx - 2.0 * xm + mean_sq;
    }
    return total / static_cast<double>(rows_.size() - 1);
  }

 private:
  std::span<const DocumentVector> rows_;
  std::vector<double> mean_;
};

void normalize_in_place(std::vector<double>& u) {
  const double norm = std::sqrt(dot(u, u));
  if (norm > 0.0) {
    for (double& x : u) x /= norm;
  }
}

struct EigenPair {
  std::vector<double> vector;
  double value;
};

EigenPair power_iteration(const Covariance& cov, std::size_t dimension,
                          const std::vector<EigenPair>& found, const PcaOptions& options,
                          uint64_t seed) {
  Rng rng(seed);
  std::vector<double> u(dimension);
  for (double& x : u) x = rng.normal();
  auto deflate = [&](std::vector<double>& w) {
    for (const EigenPair& e : found) {
      const double c = dot(e.vector, w);
      for (std::size_t d = 0; d < dimension; ++d) w[d] -= c * e.vector[d];
    }
  };
  deflate(u);
  normalize_in_place(u);

  std::vector<double> w(dimension);
  for (int it = 0; it < options.max_iterations; ++it) {
    cov.apply(u, w);
    deflate(w);
    const double norm = std::sqrt(dot(w, w));
    if (norm == 0.0) return {u, 0.0};
    double change = 0.0;
    for (std::size_t d = 0; d < dimension; ++d) {
      w[d] /= norm;
      const double diff = w[d] - u[d];
      change += diff * diff;
    }
    u.swap(w);
    if (std::sqrt(change) < options.tolerance) break;
  }
  cov.apply(u, w);
  return {u, dot(u, w)};
}

void apply_sign_convention(std::vector<double>& u) {
  std::size_t best = 0;
  for (std::size_t d = 1; d < u.size(); ++d) {
    if (std::fabs(u[d]) > std::fabs(u[best])) best = d;
  }
  if (!u.empty() && u[best] < 0.0) {
    for (double& x : u) x = -x;
  }
}

}  // namespace

Embedding2D pca_2d(std::span<const DocumentVector> vectors, std::size_t dimension,
                   const PcaOptions& options) {
  if (vectors.size() < 3) throw Error(ErrorKind::kInvalidArgument, "PCA needs at least 3 rows");
  if (dimension < 2) throw Error(ErrorKind::kInvalidArgument, "PCA needs dimension >= 2");
  const Covariance cov(vectors, dimension);
  const double trace = cov.trace();
  const double floor = 1e-12 * std::max(trace, 1e-300);
  if (!(trace > 0.0)) {
    throw Error(ErrorKind::kDegenerate, "all rows are identical; no principal axis exists");
  }

  std::vector<EigenPair> found;
  for (int c = 0; c < 2; ++c) {
    EigenPair e = power_iteration(cov, dimension, found, options, 0x9e3779b97f4a7c15ULL + c);
    if (!(e.value > floor) || e.value < 1e-10 * trace) {
      throw Error(ErrorKind::kDegenerate,
                  c == 0 ? "no principal axis exists"
                         : "points are collinear; a second principal axis does not exist");
    }
    apply_sign_convention(e.vector);
    found.push_back(std::move(e));
  }

  Embedding2D out;
  out.method = ProjectionMethod::kPca;
  out.params = {{"eigenvalue_1", found[0].value},
                {"eigenvalue_2", found[1].value},
                {"tolerance", options.tolerance},
                {"max_iterations", options.max_iterations}};
  out.points.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out.doc_ids.push_back(vectors[i].doc_id);
    out.points.push_back({cov.project(i, found[0].vector), cov.project(i, found[1].vector)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Neighbour graph

namespace {

double squared_distance(const DocumentVector& a, const DocumentVector& b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    double diff;
    if (j == b.entries.size() ||
        (i < a.entries.size() && a.entries[i].first < b.entries[j].first)) {
      diff = a.entries[i++].second;
    } else if (i == a.entries.size() || b.entries[j].first < a.entries[i].first) {
      diff = b.entries[j++].second;
    } else {
      diff = a.entries[i++].second - b.entries[j++].second;
    }
    sum += diff * diff;
  }
  return sum;
}

template <typename DistanceFn>
std::vector<NeighborList> knn_by(std::size_t n, int k, DistanceFn&& distance) {
  if (k < 1 || static_cast<std::size_t>(k) >= n) {
    throw Error(ErrorKind::kInvalidArgument, "k must satisfy 1 <= k < number of points");
  }
  std::vector<NeighborList> out(n);
  NeighborList all;
  for (std::size_t i = 0; i < n; ++i) {
    all.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) all.emplace_back(static_cast<uint32_t>(j), distance(i, j));
    }
    std::partial_sort(all.begin(), all.begin() + k, all.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    out[i].assign(all.begin(), all.begin() + k);
  }
  return out;
}

}  // namespace

std::vector<NeighborList> exact_knn(std::span<const DocumentVector> vectors, int k) {
  return knn_by(vectors.size(), k, [&](std::size_t i, std::size_t j) {
    return std::sqrt(squared_distance(vectors[i], vectors[j]));
  });
}

std::vector<NeighborList> exact_knn(std::span<const Point2> points, int k) {
  return knn_by(points.size(), k, [&](std::size_t i, std::size_t j) {
    return std::hypot(points[i].x - points[j].x, points[i].y - points[j].y);
  });
}

double FuzzyGraph::membership(uint32_t i, uint32_t j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(i, j),
                             [](const Edge& e, const std::pair<uint32_t, uint32_t>& key) {
                               return std::make_pair(e.i, e.j) < key;
                             });
  return it != edges.end() && it->i == i && it->j == j ? it->membership : 0.0;
}

SigmaSolution solve_sigma(std::span<const double> distances, double rho, double lo, double hi,
                          int iterations, double tolerance) {
  if (distances.empty() || !(lo > 0.0) || !(hi >= lo)) {
    throw Error(ErrorKind::kInvalidArgument, "solve_sigma needs neighbours and 0 < lo <= hi");
  }
  const double target = std::log2(static_cast<double>(distances.size()));
  bool informative = false;
  for (double d : distances) informative |= d - rho > 0.0;
  if (!informative) return {hi, true};

  auto row_sum = [&](double sigma) {
    double sum = 0.0;
    for (double d : distances) sum += std::exp(-std::max(0.0, d - rho) / sigma);
    return sum;
  };
  // row_sum increases with sigma.
  if (row_sum(lo) >= target) return {lo, row_sum(lo) - target > tolerance};
  if (row_sum(hi) <= target) return {hi, target - row_sum(hi) > tolerance};

  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < iterations; ++it) {
    mid = 0.5 * (lo + hi);
    const double sum = row_sum(mid);
    if (std::fabs(sum - target) < tolerance) break;
    if (sum > target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {mid, false};
}

FuzzyGraph fuzzy_graph_from_knn(std::span<const NeighborList> knn, int k) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "fuzzy graph needs k >= 2");
  const std::size_t n = knn.size();
  FuzzyGraph graph;
  graph.n_points = n;
  graph.rho.assign(n, 0.0);
  graph.sigma.assign(n, 1.0);
  graph.sigma_clamped.assign(n, false);

  double global_sum = 0.0;
  std::size_t global_count = 0;
  for (const NeighborList& list : knn) {
    for (const auto& [j, d] : list) {
      global_sum += d;
      ++global_count;
    }
  }
  const double global_mean = global_count ? global_sum / static_cast<double>(global_count) : 0.0;

  std::map<std::pair<uint32_t, uint32_t>, std::pair<double, double>> directed;
  std::vector<double> distances;
  for (std::size_t i = 0; i < n; ++i) {
    const NeighborList& list = knn[i];
    if (static_cast<int>(list.size()) != k) {
      throw Error(ErrorKind::kInvalidArgument, "neighbour lists must have exactly k entries");
    }
    distances.clear();
    double rho = 0.0;
    double sum = 0.0;
    for (const auto& [j, d] : list) {
      distances.push_back(d);
      sum += d;
      if (d > 0.0 && (rho == 0.0 || d < rho)) rho = d;
    }
    double scale = sum / static_cast<double>(k);
    if (!(scale > 0.0)) scale = global_mean > 0.0 ? global_mean : 1.0;
    const SigmaSolution s = solve_sigma(distances, rho, 1e-3 * scale, 1e3 * scale);
    graph.rho[i] = rho;
    graph.sigma[i] = s.sigma;
    graph.sigma_clamped[i] = s.clamped;

    for (const auto& [j, d] : list) {
      const double p = d == 0.0 ? 1.0 : std::exp(-std::max(0.0, d - rho) / s.sigma);
      const auto a = static_cast<uint32_t>(i);
      auto& slot = directed[{std::min(a, j), std::max(a, j)}];
      if (a < j) {
        slot.first = p;
      } else {
        slot.second = p;
      }
    }
  }
  for (const auto& [key, p] : directed) {
    const double m = p.first + p.second - p.first * p.second;
    if (m > 0.0) graph.edges.push_back({key.first, key.second, std::min(m, 1.0)});
  }
  return graph;
}

FuzzyGraph build_fuzzy_graph(std::span<const DocumentVector> vectors, int k) {
  if (k < 2 || static_cast<std::size_t>(k) >= vectors.size()) {
    throw Error(ErrorKind::kInvalidArgument, "fuzzy graph needs 2 <= k < number of points");
  }
  const auto knn = exact_knn(vectors, k);
  return fuzzy_graph_from_knn(knn, k);
}

// ---------------------------------------------------------------------------
// Layout

CurveParams fit_curve_params(double min_dist) {
  if (!(min_dist >= 0.0) || min_dist >= 3.0) {
    throw Error(ErrorKind::kInvalidArgument, "min_dist must lie in [0, 3)");
  }
  constexpr int kSamples = 300;
  std::vector<double> xs(kSamples), ys(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    xs[i] = 3.0 * i / (kSamples - 1);
    ys[i] = xs[i] <= min_dist ? 1.0 : std::exp(-(xs[i] - min_dist));
  }
  auto residuals = [&](double a, double b, std::vector<double>& r,
                       std::vector<std::array<double, 2>>* jac) {
    double sse = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const double x = xs[i];
      const double u = x > 0.0 ? std::pow(x, 2.0 * b) : 0.0;
      const double f = 1.0 / (1.0 + a * u);
      r[i] = f - ys[i];
      sse += r[i] * r[i];
      if (jac) {
        const double g = f * f;
        (*jac)[i][0] = -u * g;
        (*jac)[i][1] = x > 0.0 ? -a * u * 2.0 * std::log(x) * g : 0.0;
      }
    }
    return sse;
  };

  // Levenberg-Marquardt from (1, 1).
  double a = 1.0, b = 1.0, damping = 1e-3;
  std::vector<double> r(kSamples), r_trial(kSamples);
  std::vector<std::array<double, 2>> jac(kSamples);
  double sse = residuals(a, b, r, &jac);
  for (int it = 0; it < 500; ++it) {
    double jtj[2][2] = {{0, 0}, {0, 0}};
    double jtr[2] = {0, 0};
    for (int i = 0; i < kSamples; ++i) {
      for (int p = 0; p < 2; ++p) {
        jtr[p] += jac[i][p] * r[i];
        for (int q = 0; q < 2; ++q) jtj[p][q] += jac[i][p] * jac[i][q];
      }
    }
    bool improved = false;
    while (damping < 1e12) {
      const double m00 = jtj[0][0] * (1.0 + damping), m11 = jtj[1][1] * (1.0 + damping);
      const double det = m00 * m11 - jtj[0][1] * jtj[1][0];
      const double da = -(m11 * jtr[0] - jtj[0][1] * jtr[1]) / det;
      const double db = -(m00 * jtr[1] - jtj[1][0] * jtr[0]) / det;
      const double trial = residuals(a + da, b + db, r_trial, nullptr);
      if (trial < sse) {
        const bool converged = sse - trial < 1e-16 * std::max(sse, 1e-300) ||
                               (std::fabs(da) < 1e-15 && std::fabs(db) < 1e-15);
        a += da;
        b += db;
        sse = residuals(a, b, r, &jac);
        damping = std::max(damping * 0.3, 1e-15);
        improved = true;
        if (converged) return {a, b};
        break;
      }
      damping *= 10.0;
    }
    if (!improved) break;
  }
  return {a, b};
}

std::array<double, 2> attractive_gradient(Point2 yi, Point2 yj, CurveParams curve) {
  const double dx = yi.x - yj.x, dy = yi.y - yj.y;
  const double d2 = dx * dx + dy * dy;
  if (!(d2 > 0.0)) return {0.0, 0.0};
  const double coeff = -2.0 * curve.a * curve.b * std::pow(d2, curve.b - 1.0) /
                       (1.0 + curve.a * std::pow(d2, curve.b));
  return {coeff * dx, coeff * dy};
}

std::array<double, 2> repulsive_gradient(Point2 yi, Point2 yk, CurveParams curve,
                                         double epsilon) {
  const double dx = yi.x - yk.x, dy = yi.y - yk.y;
  const double d2 = dx * dx + dy * dy;
  if (!(d2 > 0.0)) return {0.0, 0.0};
  const double coeff =
      2.0 * curve.b / ((epsilon + d2) * (1.0 + curve.a * std::pow(d2, curve.b)));
  return {coeff * dx, coeff * dy};
}

double attractive_loss(Point2 yi, Point2 yj, CurveParams curve) {
  const double d2 = (yi.x - yj.x) * (yi.x - yj.x) + (yi.y - yj.y) * (yi.y - yj.y);
  return std::log1p(curve.a * std::pow(d2, curve.b));
}

double repulsive_loss(Point2 yi, Point2 yk, CurveParams curve) {
  const double d2 = (yi.x - yk.x) * (yi.x - yk.x) + (yi.y - yk.y) * (yi.y - yk.y);
  const double u = curve.a * std::pow(d2, curve.b);
  return -std::log(u / (1.0 + u));
}

Embedding2D umap_layout(const FuzzyGraph& graph, const UmapOptions& options) {
  Rng rng(options.seed);
  std::vector<Point2> initial(graph.n_points);
  for (Point2& p : initial) {
    p.x = rng.uniform(-options.init_range, options.init_range);
    p.y = rng.uniform(-options.init_range, options.init_range);
  }
  return umap_layout(graph, options, initial);
}

Embedding2D umap_layout(const FuzzyGraph& graph, const UmapOptions& options,
                        std::span<const Point2> initial) {
  if (options.n_epochs <= 0) throw Error(ErrorKind::kInvalidArgument, "n_epochs must be > 0");
  if (initial.size() != graph.n_points) {
    throw Error(ErrorKind::kInvalidArgument, "initial layout size differs from the graph");
  }
  const CurveParams curve = options.min_dist == kDefaultMinDist ? kDefaultCurve
                                                                 : fit_curve_params(options.min_dist);
  std::vector<Point2> y(initial.begin(), initial.end());
  const std::size_t n = graph.n_points;

  double max_membership = 0.0;
  for (const auto& e : graph.edges) max_membership = std::max(max_membership, e.membership);

  // Sampling stream is separate from the initialisation stream.
  Rng rng(options.seed ^ 0xa5a5a5a5a5a5a5a5ULL);
  auto clip = [&](double v) { return std::clamp(v, -options.clip, options.clip); };

  for (int epoch = 0; epoch < options.n_epochs; ++epoch) {
    const double alpha = 1.0 - static_cast<double>(epoch) / options.n_epochs;
    for (const auto& edge : graph.edges) {
      for (int dir = 0; dir < 2; ++dir) {
        if (rng.uniform() >= edge.membership / max_membership) continue;
        const uint32_t i = dir == 0 ? edge.i : edge.j;
        const uint32_t j = dir == 0 ? edge.j : edge.i;
        const auto g = attractive_gradient(y[i], y[j], curve);
        const double gx = clip(g[0]) * alpha, gy = clip(g[1]) * alpha;
        y[i].x += gx;
        y[i].y += gy;
        y[j].x -= gx;
        y[j].y -= gy;

        for (int s = 0; s < options.negative_samples; ++s) {
          const auto k = static_cast<uint32_t>(rng.below(n));
          if (k == i) continue;
          const auto r = repulsive_gradient(y[i], y[k], curve);
          const bool coincident = r[0] == 0.0 && r[1] == 0.0;
          y[i].x += (coincident ? options.clip : clip(r[0])) * alpha;
          y[i].y += (coincident ? options.clip : clip(r[1])) * alpha;
        }
      }
    }
  }

  Embedding2D out;
  out.method = ProjectionMethod::kUmap;
  out.points = std::move(y);
  out.seed = options.seed;
  out.params = {{"n_epochs", options.n_epochs},
                {"min_dist", options.min_dist},
                {"a", curve.a},
                {"b", curve.b},
                {"negative_samples", options.negative_samples}};
  out.doc_ids.resize(n);
  return out;
}

// ---------------------------------------------------------------------------
// 2-D separator and quality metrics

SeparatorLine2D fit_separator_2d(const Embedding2D& embedding, std::span<const Label> labels,
                                 const SvmParams& params) {
  const auto& pts = embedding.points;
  if (pts.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "embedding and labels differ in length");
  }
  const auto positives = std::count(labels.begin(), labels.end(), Label::kPositive);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(labels.size())) {
    throw Error(ErrorKind::kInvalidArgument, "separator needs both classes");
  }
  const auto n = static_cast<double>(pts.size());
  double mx = 0, my = 0;
  for (const Point2& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double vx = 0, vy = 0;
  for (const Point2& p : pts) {
    vx += (p.x - mx) * (p.x - mx);
    vy += (p.y - my) * (p.y - my);
  }
  double sx = std::sqrt(vx / n), sy = std::sqrt(vy / n);
  if (!(sx > 0.0)) sx = 1.0;
  if (!(sy > 0.0)) sy = 1.0;

  std::vector<DocumentVector> rows(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    rows[i].entries = {{0u, (pts[i].x - mx) / sx}, {1u, (pts[i].y - my) / sy}};
  }
  const SvmModel model = train_linear(rows, labels, 2, params);

  SeparatorLine2D line;
  line.a = model.weights[0] / sx;
  line.b = model.weights[1] / sy;
  line.c = model.bias - line.a * mx - line.b * my;
  if (line.a == 0.0 && line.b == 0.0) {
    throw Error(ErrorKind::kDegenerate, "separator training produced a zero normal vector");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Label predicted = line.side(pts[i]) > 0.0 ? Label::kPositive : Label::kNegative;
    if (predicted == labels[i]) ++correct;
  }
  line.accuracy = static_cast<double>(correct) / n;
  return line;
}

double neighbor_preservation(std::span<const DocumentVector> vectors,
                             std::span<const Point2> points, int k) {
  if (vectors.size() != points.size()) {
    throw Error(ErrorKind::kInvalidArgument, "vectors and points differ in length");
  }
  const auto high = exact_knn(vectors, k);
  const auto low = exact_knn(points, k);
  double total = 0.0;
  for (std::size_t i = 0; i < high.size(); ++i) {
    std::size_t shared = 0;
    for (const auto& [j, d] : high[i]) {
      for (const auto& [l, e] : low[i]) {
        if (j == l) {
          ++shared;
          break;
        }
      }
    }
    total += static_cast<double>(shared) / k;
  }
  return total / static_cast<double>(high.size());
}

double two_means_purity(std::span<const Point2> points, std::span<const int> groups) {
  if (points.size() != groups.size() || points.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "purity needs >= 2 points with one group each");
  }
  auto dist2 = [](Point2 a, Point2 b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
  };
  Point2 centroid{0, 0};
  for (const Point2& p : points) {
    centroid.x += p.x;
    centroid.y += p.y;
  }
  centroid.x /= static_cast<double>(points.size());
  centroid.y /= static_cast<double>(points.size());
  auto farthest_from = [&](Point2 q) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (dist2(points[i], q) > dist2(points[best], q)) best = i;
    }
    return points[best];
  };
  std::array<Point2, 2> centers{farthest_from(centroid), Point2{}};
  centers[1] = farthest_from(centers[0]);

  std::vector<int> assign(points.size(), -1);
  for (int it = 0; it < 100; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int c = dist2(points[i], centers[1]) < dist2(points[i], centers[0]) ? 1 : 0;
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    for (int c = 0; c < 2; ++c) {
      Point2 sum{0, 0};
      std::size_t count = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (assign[i] != c) continue;
        sum.x += points[i].x;
        sum.y += points[i].y;
        ++count;
      }
      if (count) centers[static_cast<std::size_t>(c)] = {sum.x / count, sum.y / count};
    }
  }
  std::size_t pure = 0;
  for (int c = 0; c < 2; ++c) {
    std::map<int, std::size_t> counts;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (assign[i] == c) ++counts[groups[i]];
    }
    std::size_t best = 0;
    for (const auto& [g, count] : counts) best = std::max(best, count);
    pure += best;
  }
  return static_cast<double>(pure) / static_cast<double>(points.size());
}

std::string embedding_to_csv(const Embedding2D& embedding,
                             std::span<const std::optional<Label>> labels) {
  csv::Writer writer({"doc_id", "x", "y", "label"});
  char x[32], y[32];
  for (std::size_t i = 0; i < embedding.points.size(); ++i) {
    std::snprintf(x, sizeof(x), "%.9g", embedding.points[i].x);
    std::snprintf(y, sizeof(y), "%.9g", embedding.points[i].y);
    std::string label;
    if (i < labels.size() && labels[i]) label = label_name(*labels[i]);
    writer.add_row({i < embedding.doc_ids.size() ? embedding.doc_ids[i] : "", x, y, label});
  }
  return writer.str();
}

std::string separator_to_json(const SeparatorLine2D& line) {
  return canonical_dump({{"a", line.a}, {"b", line.b}, {"c", line.c}, {"accuracy", line.accuracy}},
                        12);
}

}  // namespace trigviz
