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

#ifndef TRIGVIZ_PROJECT_H_
#define TRIGVIZ_PROJECT_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trigviz/classify.h"
#include "trigviz/corpus.h"
#include "trigviz/features.h"

namespace trigviz {

// The project module treats DocumentVector as a generic sparse row: entries
// may be negative for non-tf-idf inputs such as test fixtures.

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

enum class ProjectionMethod { kPca, kUmap };

std::optional<ProjectionMethod> parse_projection_method(std::string_view name);
std::string_view projection_method_name(ProjectionMethod method);

struct Embedding2D {
  std::vector<std::string> doc_ids;
  std::vector<Point2> points;
  ProjectionMethod method = ProjectionMethod::kUmap;
  std::map<std::string, double> params;
  uint64_t seed = 0;
};

struct PcaOptions {
  double tolerance = 1e-9;  // on eigenvector change between iterations
  int max_iterations = 1000;
};

// Top-2 principal components by power iteration with deflation on the
// (implicit) sample covariance of the mean-centred rows. Each component is
// signed so its largest-magnitude coordinate is positive. params carries
// eigenvalue_1 and eigenvalue_2. Throws kInvalidArgument for fewer than 3
// rows and kDegenerate when no second axis exists.
Embedding2D pca_2d(std::span<const DocumentVector> vectors, std::size_t dimension,
                   const PcaOptions& options = {});

// Exact k nearest neighbours by Euclidean distance, self excluded; each list
// sorted by (distance, index).
using NeighborList = std::vector<std::pair<uint32_t, double>>;
std::vector<NeighborList> exact_knn(std::span<const DocumentVector> vectors, int k);
std::vector<NeighborList> exact_knn(std::span<const Point2> points, int k);

struct FuzzyGraph {
  struct Edge {
    uint32_t i;
    uint32_t j;  // i < j
    double membership;
  };

  std::size_t n_points = 0;
  std::vector<Edge> edges;  // sorted by (i, j)
  std::vector<double> rho;
  std::vector<double> sigma;
  std::vector<bool> sigma_clamped;

  // 0 when (i, j) is not an edge.
  double membership(uint32_t i, uint32_t j) const;
};

struct SigmaSolution {
  double sigma;
  bool clamped;
};

// Binary search for sigma with sum_j exp(-max(0, d_j - rho) / sigma) =
// log2(k), bounded to [lo, hi]. When every term is independent of sigma the
// equation carries no information and sigma is pinned to hi.
SigmaSolution solve_sigma(std::span<const double> distances, double rho, double lo, double hi,
                          int iterations = 64, double tolerance = 1e-5);

// Directed fuzzy memberships p(i->j), symmetrized as a + b - a*b.
FuzzyGraph build_fuzzy_graph(std::span<const DocumentVector> vectors, int k = 15);
FuzzyGraph fuzzy_graph_from_knn(std::span<const NeighborList> knn, int k);

// Low-dimensional similarity 1 / (1 + a d^(2b)).
struct CurveParams {
  double a;
  double b;
};

// Least-squares fit of the curve to 1 for d <= min_dist and
// exp(-(d - min_dist)) beyond, sampled at 300 points over [0, 3].
CurveParams fit_curve_params(double min_dist);

// Values of fit_curve_params(0.1), frozen so the default layout does not
// depend on the optimizer.
inline constexpr CurveParams kDefaultCurve{1.5769434602697652, 0.8950608778515733};
inline constexpr double kDefaultMinDist = 0.1;

// Update direction (negative gradient of the edge cross-entropy) on y_i.
std::array<double, 2> attractive_gradient(Point2 yi, Point2 yj, CurveParams curve);
std::array<double, 2> repulsive_gradient(Point2 yi, Point2 yk, CurveParams curve,
                                         double epsilon = 0.001);

// Per-edge cross-entropy terms the gradients descend.
double attractive_loss(Point2 yi, Point2 yj, CurveParams curve);  // -log(phi)
double repulsive_loss(Point2 yi, Point2 yk, CurveParams curve);   // -log(1 - phi)

struct UmapOptions {
  int n_epochs = 500;
  uint64_t seed = 11;
  double min_dist = kDefaultMinDist;
  int negative_samples = 5;
  double clip = 4.0;
  double init_range = 10.0;
};

// Stochastic layout: random init in [-init_range, init_range]^2, each epoch
// samples every edge with probability membership / max membership, applies
// the attractive update to both endpoints and repulsive updates against
// negative samples, clipping each coordinate step to +-clip. The learning
// rate decays linearly from 1 to 0. Single-threaded and deterministic.
Embedding2D umap_layout(const FuzzyGraph& graph, const UmapOptions& options = {});

// Optional initial positions (mainly for tests).
Embedding2D umap_layout(const FuzzyGraph& graph, const UmapOptions& options,
                        std::span<const Point2> initial);

struct SeparatorLine2D {
  double a = 0.0;  // a x + b y + c = 0
  double b = 0.0;
  double c = 0.0;
  double accuracy = 0.0;

  double side(Point2 p) const { return a * p.x + b * p.y + c; }
};

// Trains the linear SVM on standardized coordinates and reports the line in
// the original coordinates.
SeparatorLine2D fit_separator_2d(const Embedding2D& embedding, std::span<const Label> labels,
                                 const SvmParams& params = {});

// Mean fraction of each point's k high-dimensional neighbours that are
// also among its k nearest neighbours in the embedding.
double neighbor_preservation(std::span<const DocumentVector> vectors,
                             std::span<const Point2> points, int k = 10);

// Purity of a deterministic 2-means clustering against `groups`.
double two_means_purity(std::span<const Point2> points, std::span<const int> groups);

std::string embedding_to_csv(const Embedding2D& embedding,
                             std::span<const std::optional<Label>> labels = {});
std::string separator_to_json(const SeparatorLine2D& line);

}  // namespace trigviz

#endif  // TRIGVIZ_PROJECT_H_
