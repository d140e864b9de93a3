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

#include "trigviz/emit.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "canonical_json.h"
#include "io.h"
#include "trigviz/error.h"

namespace trigviz {

namespace {

constexpr int kChartDigits = 9;
constexpr int kSchemaVersion = 1;

constexpr const char* kBlue = "#1f77b4";
constexpr const char* kOrange = "#ff7f0e";
constexpr const char* kGrey = "#9e9e9e";
constexpr const char* kRed = "#d62728";

std::string_view mark_name(Mark mark) {
  switch (mark) {
    case Mark::kPoint: return "point";
    case Mark::kBar: return "bar";
    case Mark::kLine: return "line";
  }
  return "point";
}

Mark parse_mark(std::string_view name) {
  if (name == "point") return Mark::kPoint;
  if (name == "bar") return Mark::kBar;
  if (name == "line") return Mark::kLine;
  throw Error(ErrorKind::kDataError, "unknown mark '" + std::string(name) + "'");
}

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string_view chart_kind_name(ChartKind kind) {
  switch (kind) {
    case ChartKind::kHistogram: return "histogram";
    case ChartKind::kScatter: return "scatter";
    case ChartKind::kGroupedBars: return "grouped_bars";
    case ChartKind::kTimelineScatter: return "timeline_scatter";
    case ChartKind::kEmbeddingScatter: return "embedding_scatter";
  }
  return "scatter";
}

std::optional<ChartKind> parse_chart_kind(std::string_view name) {
  for (ChartKind kind : {ChartKind::kHistogram, ChartKind::kScatter, ChartKind::kGroupedBars,
                         ChartKind::kTimelineScatter, ChartKind::kEmbeddingScatter}) {
    if (chart_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

void validate_payload(const ChartPayload& payload) {
  if (!valid_name(payload.name)) {
    throw Error(ErrorKind::kInvalidArgument,
                "chart name '" + payload.name + "' must be non-empty [a-z0-9_-]");
  }
  if (payload.series.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "chart '" + payload.name + "' has no series");
  }
  for (const Series& s : payload.series) {
    if (s.hover && s.hover->size() != s.points.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "series '" + s.name + "' has " + std::to_string(s.hover->size()) +
                      " hover entries for " + std::to_string(s.points.size()) + " points");
    }
    for (const DataPoint& p : s.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw Error(ErrorKind::kInvalidArgument, "series '" + s.name + "' has a non-finite value");
      }
    }
  }
  for (const auto& [key, value] : payload.annotations) {
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::kInvalidArgument, "annotation '" + key + "' is not finite");
    }
  }
}

std::string payload_to_json(const ChartPayload& payload) {
  validate_payload(payload);
  nlohmann::json series = nlohmann::json::array();
  for (const Series& s : payload.series) {
    nlohmann::json points = nlohmann::json::array();
    for (const DataPoint& p : s.points) {
      nlohmann::json point = {{"x", p.x}, {"y", p.y}};
      if (!p.label.empty()) point["label"] = p.label;
      points.push_back(std::move(point));
    }
    nlohmann::json entry = {
        {"name", s.name}, {"mark", mark_name(s.mark)}, {"color", s.color}, {"points", points}};
    if (s.hover) {
      nlohmann::json hover = nlohmann::json::array();
      for (const Hover& h : *s.hover) {
        hover.push_back({{"doc_id", h.doc_id}, {"snippet", h.snippet}, {"date", h.date}});
      }
      entry["hover"] = std::move(hover);
    }
    series.push_back(std::move(entry));
  }
  nlohmann::json annotations = nlohmann::json::object();
  for (const auto& [key, value] : payload.annotations) annotations[key] = value;
  return canonical_dump(
      {{"schema_version", kSchemaVersion},
       {"kind", chart_kind_name(payload.kind)},
       {"name", payload.name},
       {"title", payload.title},
       {"x_axis", {{"label", payload.x_axis.label}, {"unit", payload.x_axis.unit}}},
       {"y_axis", {{"label", payload.y_axis.label}, {"unit", payload.y_axis.unit}}},
       {"series", std::move(series)},
       {"annotations", std::move(annotations)}},
      kChartDigits);
}

ChartPayload payload_from_json(std::string_view json_text) {
  const nlohmann::json j = parse_json(json_text, "chart payload");
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw Error(ErrorKind::kDataError, "unsupported chart schema_version");
    }
    ChartPayload p;
    const std::string kind = j.at("kind").get<std::string>();
    const auto parsed = parse_chart_kind(kind);
    if (!parsed) throw Error(ErrorKind::kDataError, "unknown chart kind '" + kind + "'");
    p.kind = *parsed;
    p.name = j.at("name").get<std::string>();
    p.title = j.at("title").get<std::string>();
    p.x_axis = {j.at("x_axis").at("label").get<std::string>(),
                j.at("x_axis").at("unit").get<std::string>()};
    p.y_axis = {j.at("y_axis").at("label").get<std::string>(),
                j.at("y_axis").at("unit").get<std::string>()};
    for (const auto& s : j.at("series")) {
      Series series;
      series.name = s.at("name").get<std::string>();
      series.mark = parse_mark(s.at("mark").get<std::string>());
      series.color = s.at("color").get<std::string>();
      for (const auto& pt : s.at("points")) {
        series.points.push_back({pt.at("x").get<double>(), pt.at("y").get<double>(),
                                 pt.value("label", std::string())});
      }
      if (s.contains("hover")) {
        std::vector<Hover> hover;
        for (const auto& h : s.at("hover")) {
          hover.push_back({h.at("doc_id").get<std::string>(), h.at("snippet").get<std::string>(),
                           h.at("date").get<std::string>()});
        }
        series.hover = std::move(hover);
      }
      p.series.push_back(std::move(series));
    }
    for (const auto& [key, value] : j.at("annotations").items()) {
      p.annotations[key] = value.get<double>();
    }
    validate_payload(p);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kDataError, std::string("malformed chart payload: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInvalidArgument) throw Error(ErrorKind::kDataError, e.what());
    throw;
  }
}

ChartPayload canonicalize(const ChartPayload& payload) {
  ChartPayload out = payload;
  for (Series& s : out.series) {
    for (DataPoint& p : s.points) {
      p.x = round_significant(p.x, kChartDigits);
      p.y = round_significant(p.y, kChartDigits);
    }
  }
  for (auto& [key, value] : out.annotations) value = round_significant(value, kChartDigits);
  return out;
}

// ---------------------------------------------------------------------------
// SVG

std::string render_svg(const ChartPayload& payload) {
  validate_payload(payload);
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  bool has_bars = false;
  std::size_t bar_series = 0;
  for (const Series& s : payload.series) {
    if (s.mark == Mark::kBar) {
      has_bars = true;
      ++bar_series;
    }
    for (const DataPoint& p : s.points) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  if (has_bars) {
    y_lo = std::min(y_lo, 0.0);
    y_hi = std::max(y_hi, 0.0);
  }
  // Bars are centred on their x value, so leave half a slot either side.
  double slot = 1.0;
  if (has_bars) {
    std::vector<double> xs;
    for (const Series& s : payload.series) {
      for (const DataPoint& p : s.points) xs.push_back(p.x);
    }
    std::sort(xs.begin(), xs.end());
    double gap = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const double d = xs[i] - xs[i - 1];
      if (d > 0.0 && (gap == 0.0 || d < gap)) gap = d;
    }
    if (gap > 0.0) slot = gap;
    x_lo -= slot / 2;
    x_hi += slot / 2;
  }
  if (x_hi == x_lo) x_lo -= 0.5, x_hi += 0.5;
  if (y_hi == y_lo) y_lo -= 0.5, y_hi += 0.5;
  const double x_pad = has_bars ? 0.0 : 0.03 * (x_hi - x_lo);
  const double y_pad = 0.05 * (y_hi - y_lo);
  x_lo -= x_pad, x_hi += x_pad;
  if (!(has_bars && y_lo == 0.0)) y_lo -= y_pad;
  y_hi += y_pad;

  auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
         xml_escape(payload.title) + "</text>\n";

  // Axes with five ticks each.
  out += "<g stroke=\"black\" fill=\"none\">\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" +
         num(kLeft + plot_w) + "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
  out += "</g>\n<g font-size=\"11\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4, yv = y_lo + (y_hi - y_lo) * t / 4;
    out += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(kTop + plot_h + 16) +
           "\" text-anchor=\"middle\">" + num(xv) + "</text>\n";
    out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(sy(yv) + 4) +
           "\" text-anchor=\"end\">" + num(yv) + "</text>\n";
  }
  auto axis_title = [](const Axis& axis) {
    return xml_escape(axis.unit.empty() ? axis.label : axis.label + " (" + axis.unit + ")");
  };
  out += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 16) +
         "\" text-anchor=\"middle\">" + axis_title(payload.x_axis) + "</text>\n";
  out += "<text x=\"16\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(kTop + plot_h / 2) + ")\">" + axis_title(payload.y_axis) + "</text>\n";
  out += "</g>\n";

  std::size_t bar_index = 0;
  for (const Series& s : payload.series) {
    out += "<g class=\"series\" data-name=\"" + xml_escape(s.name) + "\">\n";
    if (s.mark == Mark::kLine) {
      out += "<polyline fill=\"none\" stroke=\"" + xml_escape(s.color) + "\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i) out += ' ';
        out += num(sx(s.points[i].x)) + "," + num(sy(s.points[i].y));
      }
      out += "\"/>\n";
    } else {
      const double width = slot / static_cast<double>(std::max<std::size_t>(bar_series, 1)) * 0.9;
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        const DataPoint& p = s.points[i];
        std::string title;
        if (s.hover) {
          const Hover& h = (*s.hover)[i];
          title = "<title>" + xml_escape(h.doc_id + " " + h.date + "\n" + h.snippet) + "</title>";
        } else if (!p.label.empty()) {
          title = "<title>" + xml_escape(p.label) + "</title>";
        }
        if (s.mark == Mark::kBar) {
          const double left = p.x - slot * 0.45 + width * static_cast<double>(bar_index);
          const double top = sy(std::max(p.y, 0.0)), bottom = sy(std::min(p.y, 0.0));
          out += "<rect x=\"" + num(sx(left)) + "\" y=\"" + num(top) + "\" width=\"" +
                 num(sx(left + width) - sx(left)) + "\" height=\"" + num(bottom - top) +
                 "\" fill=\"" + xml_escape(s.color) + "\">" + title + "</rect>\n";
        } else {
          out += "<circle cx=\"" + num(sx(p.x)) + "\" cy=\"" + num(sy(p.y)) + "\" r=\"3\" fill=\"" +
                 xml_escape(s.color) + "\" fill-opacity=\"0.7\">" + title + "</circle>\n";
        }
      }
      if (s.mark == Mark::kBar) ++bar_index;
    }
    out += "</g>\n";
  }

  // Legend.
  double ly = kTop + 8;
  for (const Series& s : payload.series) {
    out += "<rect x=\"" + num(kWidth - kRight - 150) + "\" y=\"" + num(ly - 8) +
           "\" width=\"10\" height=\"10\" fill=\"" + xml_escape(s.color) + "\"/>\n";
    out += "<text x=\"" + num(kWidth - kRight - 135) + "\" y=\"" + num(ly + 1) +
           "\" font-size=\"11\">" + xml_escape(s.name) + "</text>\n";
    ly += 16;
  }
  out += "</svg>\n";
  return out;
}

std::vector<std::filesystem::path> emit_chart(const ChartPayload& payload,
                                              const std::filesystem::path& dir, bool svg) {
  const std::string stem = std::string(chart_kind_name(payload.kind)) + "-" + payload.name;
  std::vector<std::filesystem::path> written;
  written.push_back(dir / (stem + ".json"));
  io::write_file(written.back(), payload_to_json(payload));
  if (svg) {
    written.push_back(dir / (stem + ".svg"));
    io::write_file(written.back(), render_svg(payload));
  }
  return written;
}

// ---------------------------------------------------------------------------
// Figure builders

std::string snippet(std::string_view text, std::size_t max_chars) {
  if (text.size() <= max_chars) return std::string(text);
  std::size_t cut = max_chars;
  while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
  return std::string(text.substr(0, cut));
}

ChartPayload histogram_chart(const HistogramSpec& hist, std::string name, std::string title) {
  ChartPayload p;
  p.kind = ChartKind::kHistogram;
  p.name = std::move(name);
  p.title = std::move(title);
  p.x_axis = {"word count", "words"};
  p.y_axis = {"articles", "count"};
  Series s{"articles", Mark::kBar, kBlue, {}, std::nullopt};
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double lo = hist.bin_edges[i], hi = hist.bin_edges[i + 1];
    s.points.push_back({(lo + hi) / 2, static_cast<double>(hist.counts[i]),
                        num(lo) + "-" + num(hi)});
  }
  p.series.push_back(std::move(s));
  p.annotations = {{"overflow_count", static_cast<double>(hist.overflow_count)},
                   {"total", static_cast<double>(hist.total())}};
  if (hist.bin_edges.size() >= 2) {
    p.annotations["bin_width"] = hist.bin_edges[1] - hist.bin_edges[0];
    p.annotations["max_edge"] = hist.bin_edges.back();
  }
  return p;
}

ChartPayload digest_scatter_chart(std::span<const DigestProfile> profiles,
                                  const ProfileCorrelations& correlations) {
  ChartPayload p;
  p.kind = ChartKind::kScatter;
  p.name = "digest-profile";
  p.title = "Word count against countries mentioned";
  p.x_axis = {"word count", "words"};
  p.y_axis = {"countries mentioned", "count"};
  Series ordinary{"ordinary", Mark::kPoint, kBlue, {}, std::vector<Hover>{}};
  Series flagged{"flagged digest", Mark::kPoint, kRed, {}, std::vector<Hover>{}};
  std::size_t n_flagged = 0;
  for (const DigestProfile& d : profiles) {
    Series& s = d.flagged ? flagged : ordinary;
    n_flagged += d.flagged;
    s.points.push_back({static_cast<double>(d.word_count), static_cast<double>(d.country_count),
                        ""});
    s.hover->push_back({d.doc_id, std::to_string(d.year_count) + " distinct years", ""});
  }
  p.series.push_back(std::move(ordinary));
  p.series.push_back(std::move(flagged));
  p.annotations = {{"pearson_word_country", correlations.word_country},
                   {"pearson_word_year", correlations.word_year},
                   {"pearson_country_year", correlations.country_year},
                   {"flagged_count", static_cast<double>(n_flagged)},
                   {"articles", static_cast<double>(profiles.size())}};
  return p;
}

ChartPayload top_tokens_chart(const ClassTokenRanking& positive,
                              const ClassTokenRanking& negative) {
  ChartPayload p;
  p.kind = ChartKind::kGroupedBars;
  p.name = "top-tokens";
  p.title = "Highest scoring tokens per class";
  p.x_axis = {"rank", ""};
  p.y_axis = {"tf-idf score", ""};
  for (const ClassTokenRanking* r : {&positive, &negative}) {
    Series s{std::string(label_name(r->label)), Mark::kBar,
             r->label == Label::kPositive ? kOrange : kBlue, {}, std::nullopt};
    for (std::size_t i = 0; i < r->ranked.size(); ++i) {
      s.points.push_back({static_cast<double>(i + 1), r->ranked[i].second, r->ranked[i].first});
    }
    p.series.push_back(std::move(s));
  }
  return p;
}

ChartPayload embedding_chart(const Embedding2D& embedding, std::span<const Label> labels,
                             const std::optional<SeparatorLine2D>& separator, std::string name) {
  if (!labels.empty() && labels.size() != embedding.points.size()) {
    throw Error(ErrorKind::kInvalidArgument, "labels and embedding differ in length");
  }
  ChartPayload p;
  p.kind = ChartKind::kEmbeddingScatter;
  p.name = std::move(name);
  p.title = std::string(projection_method_name(embedding.method)) + " projection of document vectors";
  p.x_axis = {"component 1", ""};
  p.y_axis = {"component 2", ""};
  Series pos{"positive", Mark::kPoint, kOrange, {}, std::vector<Hover>{}};
  Series neg{"negative", Mark::kPoint, kBlue, {}, std::vector<Hover>{}};
  Series unlabeled{"unlabeled", Mark::kPoint, kGrey, {}, std::vector<Hover>{}};
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (std::size_t i = 0; i < embedding.points.size(); ++i) {
    const Point2 pt = embedding.points[i];
    x_lo = std::min(x_lo, pt.x), x_hi = std::max(x_hi, pt.x);
    y_lo = std::min(y_lo, pt.y), y_hi = std::max(y_hi, pt.y);
    Series& s = labels.empty() ? unlabeled : labels[i] == Label::kPositive ? pos : neg;
    s.points.push_back({pt.x, pt.y, ""});
    s.hover->push_back({i < embedding.doc_ids.size() ? embedding.doc_ids[i] : "", "", ""});
  }
  for (Series* s : {&pos, &neg, &unlabeled}) {
    if (!s->points.empty()) p.series.push_back(std::move(*s));
  }
  for (const auto& [key, value] : embedding.params) p.annotations["param_" + key] = value;
  if (separator && std::isfinite(x_lo)) {
    Series line{"separator", Mark::kLine, "#000000", {}, std::nullopt};
    const auto& [a, b, c, accuracy] = *separator;
    if (std::fabs(b) >= std::fabs(a)) {
      line.points = {{x_lo, -(a * x_lo + c) / b, ""}, {x_hi, -(a * x_hi + c) / b, ""}};
    } else {
      line.points = {{-(b * y_lo + c) / a, y_lo, ""}, {-(b * y_hi + c) / a, y_hi, ""}};
    }
    p.series.push_back(std::move(line));
    p.annotations["separator_a"] = a;
    p.annotations["separator_b"] = b;
    p.annotations["separator_c"] = c;
    p.annotations["separator_accuracy"] = accuracy;
  }
  return p;
}

ChartPayload timeline_chart(const Timeline& timeline, const Corpus& corpus) {
  ChartPayload p;
  p.kind = ChartKind::kTimelineScatter;
  p.name = "timeline";
  p.title = "Positive classifications by country over time";
  p.x_axis = {"publication date", "year"};
  p.y_axis = {"country", "index"};
  std::map<std::string, int> row;
  for (const TimelineRecord& r : timeline.records) row.emplace(r.country, 0);
  int next = 0;
  for (auto& [country, index] : row) index = next++;

  Series dependent{std::string(corpus_tag_name(CorpusTag::kDependentSpace)), Mark::kPoint, kBlue,
                   {}, std::vector<Hover>{}};
  Series null{std::string(corpus_tag_name(CorpusTag::kNullSpace)), Mark::kPoint, kGrey,
              {}, std::vector<Hover>{}};
  for (const TimelineRecord& r : timeline.records) {
    Series& s = r.corpus_tag == CorpusTag::kDependentSpace ? dependent : null;
    s.points.push_back({fractional_year(r.pub_date), static_cast<double>(row[r.country]), r.country});
    std::string text;
    if (const auto pos = corpus.find(r.doc_id)) text = snippet(corpus[*pos].text);
    s.hover->push_back({r.doc_id, std::move(text), format_iso_date(r.pub_date)});
  }
  p.annotations = {{"dependent_space_count", static_cast<double>(dependent.points.size())},
                   {"null_space_count", static_cast<double>(null.points.size())},
                   {"total", static_cast<double>(timeline.records.size())}};
  p.series.push_back(std::move(dependent));
  p.series.push_back(std::move(null));
  return p;
}

}  // namespace trigviz
