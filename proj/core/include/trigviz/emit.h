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

#ifndef TRIGVIZ_EMIT_H_
#define TRIGVIZ_EMIT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigviz/classify.h"
#include "trigviz/corpus.h"
#include "trigviz/features.h"
#include "trigviz/preprocess.h"
#include "trigviz/project.h"
#include "trigviz/screening.h"
#include "trigviz/validate.h"

namespace trigviz {

enum class ChartKind { kHistogram, kScatter, kGroupedBars, kTimelineScatter, kEmbeddingScatter };

std::string_view chart_kind_name(ChartKind kind);
std::optional<ChartKind> parse_chart_kind(std::string_view name);

enum class Mark { kPoint, kBar, kLine };

struct Axis {
  std::string label;
  std::string unit;
  friend bool operator==(const Axis&, const Axis&) = default;
};

struct Hover {
  std::string doc_id;
  std::string snippet;
  std::string date;
  friend bool operator==(const Hover&, const Hover&) = default;
};

struct DataPoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;  // category name for bars, optional otherwise
  friend bool operator==(const DataPoint&, const DataPoint&) = default;
};

struct Series {
  std::string name;
  Mark mark = Mark::kPoint;
  std::string color;
  std::vector<DataPoint> points;
  std::optional<std::vector<Hover>> hover;  // aligned with points
  friend bool operator==(const Series&, const Series&) = default;
};

struct ChartPayload {
  ChartKind kind = ChartKind::kScatter;
  std::string name;  // file stem: <kind>-<name>.json
  std::string title;
  Axis x_axis;
  Axis y_axis;
  std::vector<Series> series;
  std::map<std::string, double> annotations;
  friend bool operator==(const ChartPayload&, const ChartPayload&) = default;
};

// Throws kInvalidArgument: no series, hover/point size mismatch, non-finite
// values, empty name.
void validate_payload(const ChartPayload& payload);

// Canonical JSON: sorted keys, two-space indent, LF newlines, floats at 9
// significant digits.
std::string payload_to_json(const ChartPayload& payload);
ChartPayload payload_from_json(std::string_view json_text);

// The payload with every float rounded to 9 significant digits; equal to
// payload_from_json(payload_to_json(p)).
ChartPayload canonicalize(const ChartPayload& payload);

// Static SVG, linear axes, one element per point (circle) or bar (rect);
// line series become a single polyline.
std::string render_svg(const ChartPayload& payload);

// Writes <dir>/<kind>-<name>.json and, when svg is set, the .svg alongside.
// Returns the written paths.
std::vector<std::filesystem::path> emit_chart(const ChartPayload& payload,
                                              const std::filesystem::path& dir, bool svg);

// Figure builders.
ChartPayload histogram_chart(const HistogramSpec& hist, std::string name, std::string title);
ChartPayload digest_scatter_chart(std::span<const DigestProfile> profiles,
                                  const ProfileCorrelations& correlations);
ChartPayload top_tokens_chart(const ClassTokenRanking& positive,
                              const ClassTokenRanking& negative);
ChartPayload embedding_chart(const Embedding2D& embedding, std::span<const Label> labels,
                             const std::optional<SeparatorLine2D>& separator, std::string name);
ChartPayload timeline_chart(const Timeline& timeline, const Corpus& corpus);

// First `max_chars` bytes of the text, cut at a UTF-8 boundary.
std::string snippet(std::string_view text, std::size_t max_chars = 160);

}  // namespace trigviz

#endif  // TRIGVIZ_EMIT_H_
