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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "trigviz/emit.h"
#include "trigviz/error.h"
#include "trigviz/random.h"

namespace trigviz {
namespace {

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

ChartPayload sample_payload() {
  ChartPayload p;
  p.kind = ChartKind::kScatter;
  p.name = "sample_1";
  p.title = "Sample <chart> & co";
  p.x_axis = {"x", "units"};
  p.y_axis = {"y", ""};
  p.series.push_back({"dots", Mark::kPoint, "#123456",
                      {{0.1 + 0.2, 1.0 / 3.0, ""}, {-2.5, 1e-12, "b"}},
                      std::vector<Hover>{{"d1", "caf\xc3\xa9 \"quoted\"", "1994-01-02"},
                                         {"d2", "", ""}}});
  p.series.push_back({"bars", Mark::kBar, "#abcdef", {{1, 2, "one"}, {2, -1, "two"}}, std::nullopt});
  p.series.push_back({"line", Mark::kLine, "#000000", {{0, 0, ""}, {3, 3, ""}}, std::nullopt});
  p.annotations = {{"pi", 3.14159265358979}, {"zero", -0.0}};
  return p;
}

TEST(EmitTest, RoundTripEqualsCanonicalForm) {
  const ChartPayload p = sample_payload();
  const std::string json = payload_to_json(p);
  const ChartPayload back = payload_from_json(json);
  EXPECT_EQ(back, canonicalize(p));
  EXPECT_EQ(payload_to_json(back), json);
  EXPECT_EQ(back.series[0].points[0].x, 0.3);
  EXPECT_EQ(back.series[0].points[0].y, 0.333333333);
  EXPECT_FALSE(back.series[1].hover.has_value());
}

TEST(EmitTest, RandomPayloadsRoundTrip) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    ChartPayload p;
    p.kind = static_cast<ChartKind>(rng.below(5));
    p.name = "r" + std::to_string(trial);
    const int n_series = 1 + static_cast<int>(rng.below(3));
    for (int s = 0; s < n_series; ++s) {
      Series series{"s" + std::to_string(s), static_cast<Mark>(rng.below(3)), "#000000", {}, std::nullopt};
      const int n = static_cast<int>(rng.below(20));
      for (int i = 0; i < n; ++i) {
        series.points.push_back({rng.normal() * std::pow(10.0, rng.between(-8, 8)),
                                 rng.uniform(-1e6, 1e6), ""});
      }
      p.series.push_back(std::move(series));
    }
    p.annotations["a"] = rng.normal();
    EXPECT_EQ(payload_from_json(payload_to_json(p)), canonicalize(p));
  }
}

TEST(EmitTest, JsonLayout) {
  const std::string json = payload_to_json(sample_payload());
  EXPECT_EQ(json.rfind("{\n  \"annotations\"", 0), 0u);
  EXPECT_EQ(json.back(), '\n');
  EXPECT_EQ(json.find('\r'), std::string::npos);
  EXPECT_NE(json.find("\"schema_version\": 1"), std::string::npos);
  EXPECT_NE(json.find("\"kind\": \"scatter\""), std::string::npos);
  EXPECT_NE(json.find("\"zero\": 0"), std::string::npos);
}

TEST(EmitTest, ValidationErrors) {
  ChartPayload p = sample_payload();
  p.name = "Bad Name";
  EXPECT_THROW(payload_to_json(p), Error);
  p = sample_payload();
  p.series.clear();
  EXPECT_THROW(validate_payload(p), Error);
  p = sample_payload();
  p.series[0].hover->pop_back();
  EXPECT_THROW(validate_payload(p), Error);
  p = sample_payload();
  p.series[1].points[0].y = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(validate_payload(p), Error);
  p = sample_payload();
  p.annotations["inf"] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(validate_payload(p), Error);
}

TEST(EmitTest, MalformedJsonIsDataError) {
  for (const char* text : {"", "{", "[]", "{\"schema_version\": 1}",
                           "{\"schema_version\": 99, \"kind\": \"scatter\"}"}) {
    try {
      payload_from_json(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kDataError) << text;
    }
  }
}

TEST(EmitTest, SvgHasOneElementPerMark) {
  const std::string svg = render_svg(sample_payload());
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count_of(svg, "<circle"), 2u);
  EXPECT_EQ(count_of(svg, "</rect>"), 2u);
  EXPECT_EQ(count_of(svg, "<polyline"), 1u);
  EXPECT_EQ(count_of(svg, "<title>"), 4u);  // two hovers, two bar labels
  EXPECT_NE(svg.find("Sample &lt;chart&gt; &amp; co"), std::string::npos);
  EXPECT_NE(svg.find("&quot;quoted&quot;"), std::string::npos);
  EXPECT_EQ(svg, render_svg(sample_payload()));
}

TEST(EmitTest, EmitChartWritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "trigviz-emit-test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto paths = emit_chart(sample_payload(), dir, true);
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].filename(), "scatter-sample_1.json");
  EXPECT_EQ(paths[1].filename(), "scatter-sample_1.svg");
  std::ifstream in(paths[0], std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), payload_to_json(sample_payload()));
  EXPECT_EQ(emit_chart(sample_payload(), dir, false).size(), 1u);
  std::filesystem::remove_all(dir);
}

TEST(EmitTest, SnippetCutsAtCharacterBoundary) {
  EXPECT_EQ(snippet("short", 10), "short");
  EXPECT_EQ(snippet("abc\xc3\xa9xyz", 4), "abc");
  EXPECT_EQ(snippet("abc\xc3\xa9xyz", 5), "abc\xc3\xa9");
  EXPECT_EQ(snippet("\xe2\x82\xac\xe2\x82\xac", 4), "\xe2\x82\xac");
}

TEST(BuilderTest, Histogram) {
  const std::vector<std::size_t> values{5, 15, 15, 25, 99};
  const ChartPayload p = histogram_chart(histogram(values, 10, 30), "word-counts", "t");
  ASSERT_EQ(p.series.size(), 1u);
  ASSERT_EQ(p.series[0].points.size(), 3u);
  EXPECT_EQ(p.series[0].points[1].x, 15.0);
  EXPECT_EQ(p.series[0].points[1].y, 2.0);
  EXPECT_EQ(p.series[0].points[1].label, "10-20");
  EXPECT_EQ(p.annotations.at("overflow_count"), 1.0);
  EXPECT_EQ(p.annotations.at("total"), 5.0);
  EXPECT_EQ(p.annotations.at("bin_width"), 10.0);
}

TEST(BuilderTest, DigestScatterSplitsFlagged) {
  std::vector<DigestProfile> profiles(3);
  profiles[0] = {"a", 10, 1, 0, {}, false};
  profiles[1] = {"b", 900, 9, 7, {}, true};
  profiles[2] = {"c", 20, 2, 1, {}, false};
  const ChartPayload p = digest_scatter_chart(profiles, {0.9, 0.8, 0.7});
  EXPECT_EQ(p.series[0].points.size(), 2u);
  EXPECT_EQ(p.series[1].points.size(), 1u);
  EXPECT_EQ((*p.series[1].hover)[0].doc_id, "b");
  EXPECT_EQ(p.annotations.at("pearson_word_country"), 0.9);
  EXPECT_EQ(p.annotations.at("flagged_count"), 1.0);
}

TEST(BuilderTest, TopTokensRanks) {
  const ClassTokenRanking pos{Label::kPositive, {{"coup", 0.5}, {"arm", 0.25}}};
  const ClassTokenRanking neg{Label::kNegative, {{"trade", 0.4}}};
  const ChartPayload p = top_tokens_chart(pos, neg);
  ASSERT_EQ(p.series.size(), 2u);
  EXPECT_EQ(p.series[0].name, "positive");
  EXPECT_EQ(p.series[0].points[1].x, 2.0);
  EXPECT_EQ(p.series[0].points[1].label, "arm");
  EXPECT_EQ(p.series[1].points[0].label, "trade");
}

TEST(BuilderTest, EmbeddingWithSeparator) {
  Embedding2D e;
  e.doc_ids = {"a", "b", "c"};
  e.points = {{0, 0}, {2, 1}, {4, 4}};
  e.method = ProjectionMethod::kPca;
  e.params = {{"eigenvalue_1", 3.0}};
  const std::vector<Label> labels{Label::kNegative, Label::kPositive, Label::kPositive};
  const ChartPayload p = embedding_chart(e, labels, SeparatorLine2D{1, 1, -1, 1.0}, "training");
  ASSERT_EQ(p.series.size(), 3u);
  EXPECT_EQ(p.series[0].name, "positive");
  EXPECT_EQ(p.series[0].points.size(), 2u);
  const Series& line = p.series[2];
  EXPECT_EQ(line.mark, Mark::kLine);
  for (const DataPoint& pt : line.points) EXPECT_NEAR(pt.x + pt.y - 1, 0.0, 1e-12);
  EXPECT_EQ(p.annotations.at("param_eigenvalue_1"), 3.0);
  EXPECT_EQ(embedding_chart(e, {}, std::nullopt, "x").series[0].name, "unlabeled");
  EXPECT_THROW(embedding_chart(e, std::vector<Label>{Label::kPositive}, std::nullopt, "x"), Error);
}

TEST(BuilderTest, TimelineSeriesMatchTags) {
  const Corpus corpus("c", {Article{"a", "first text", *parse_iso_date("1994-01-01"), "Rwanda", {}},
                            Article{"b", "second", *parse_iso_date("1995-07-01"), "Kenya", {}}});
  Timeline t;
  t.records.push_back({"Kenya", corpus[1].pub_date, "b", Label::kPositive, false, CorpusTag::kNullSpace});
  t.records.push_back({"Rwanda", corpus[0].pub_date, "a", Label::kPositive, true, CorpusTag::kDependentSpace});
  const ChartPayload p = timeline_chart(t, corpus);
  EXPECT_EQ(p.series[0].name, "dependent_space");
  ASSERT_EQ(p.series[0].points.size(), 1u);
  EXPECT_EQ(p.series[0].points[0].y, 1.0);  // Rwanda is the second country
  EXPECT_EQ((*p.series[0].hover)[0].snippet, "first text");
  EXPECT_EQ((*p.series[0].hover)[0].date, "1994-01-01");
  EXPECT_EQ(p.annotations.at("dependent_space_count") + p.annotations.at("null_space_count"),
            p.annotations.at("total"));
}

}  // namespace
}  // namespace trigviz
