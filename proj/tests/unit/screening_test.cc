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

#include <cmath>

#include "trigviz/builtin_data.h"
#include "trigviz/error.h"
#include "trigviz/screening.h"

namespace trigviz {
namespace {

using Strings = std::vector<std::string>;

Gazetteer small_gazetteer() {
  return parse_gazetteer(
      "country,alias\n"
      "DRC,democratic republic of the congo\n"
      "DRC,drc\n"
      "Republic of the Congo,congo\n"
      "Ivory Coast,côte d'ivoire\n"
      "Ivory Coast,ivory coast\n"
      "Chile,chile\n");
}

TEST(GazetteerTest, LongestAliasWins) {
  const Gazetteer g = small_gazetteer();
  const auto tokens = normalize("Fighting in the Democratic Republic of the Congo spread").tokens;
  EXPECT_EQ(g.countries_in(tokens), (Strings{"DRC"}));
  const auto both = normalize("Congo and the DRC").tokens;
  auto found = g.countries_in(both);
  std::sort(found.begin(), found.end());
  EXPECT_EQ(found, (Strings{"DRC", "Republic of the Congo"}));
}

TEST(GazetteerTest, AliasesNormalizedLikeText) {
  const Gazetteer g = small_gazetteer();
  EXPECT_EQ(g.countries_in(normalize("CÔTE D’IVOIRE and Ivory-Coast").tokens),
            (Strings{"Ivory Coast"}));
  EXPECT_TRUE(g.countries_in(normalize("nothing here").tokens).empty());
  EXPECT_TRUE(g.countries_in(Strings{}).empty());
}

TEST(GazetteerTest, BadInputs) {
  Gazetteer g;
  EXPECT_THROW(g.add("X", " -- "), Error);
  EXPECT_THROW(parse_gazetteer("name,alias\nA,a\n"), Error);
  EXPECT_GT(parse_gazetteer(builtin_gazetteer_csv()).size(), 50u);
}

TEST(YearTokenTest, Pattern) {
  EXPECT_TRUE(is_year_token("1994"));
  EXPECT_TRUE(is_year_token("2017"));
  EXPECT_FALSE(is_year_token("1800"));
  EXPECT_FALSE(is_year_token("199"));
  EXPECT_FALSE(is_year_token("19945"));
  EXPECT_FALSE(is_year_token("19a4"));
}

TEST(ProfileTest, CountsWordsCountriesAndDistinctYears) {
  const Gazetteer g = small_gazetteer();
  const Article a{"d", "Chile in 1973 and 1973, Congo in 1960; DRC 1997.", {}, "Chile", {}};
  const DigestProfile p = profile(a, g);
  EXPECT_EQ(p.word_count, 10u);
  EXPECT_EQ(p.country_count, 3u);
  EXPECT_EQ(p.year_count, 3u);
}

TEST(PercentileTest, InclusiveNearestRank) {
  const std::vector<double> s{10, 20, 20, 30};
  EXPECT_EQ(percentile_ranks(s), (std::vector<double>{0.25, 0.75, 0.75, 1.0}));
}

std::vector<DigestProfile> profiles_from(std::initializer_list<std::array<std::size_t, 3>> rows) {
  std::vector<DigestProfile> out;
  int i = 0;
  for (const auto& r : rows) {
    DigestProfile p;
    p.doc_id = "p" + std::to_string(i++);
    p.word_count = r[0];
    p.country_count = r[1];
    p.year_count = r[2];
    out.push_back(p);
  }
  return out;
}

TEST(FlagTest, ConjunctiveNeedsAllThree) {
  auto profiles = profiles_from({{100, 1, 0}, {120, 1, 1}, {110, 2, 0}, {900, 9, 8}, {950, 1, 0}});
  const FlagResult r = flag_digests(profiles, 0.8);
  EXPECT_EQ(r.flagged_count(), 1u);
  EXPECT_TRUE(r.profiles[3].flagged);
  EXPECT_FALSE(r.profiles[4].flagged);
  const FlagResult any = flag_digests(profiles, 0.8, FlagMode::kDisjunctive);
  EXPECT_EQ(any.flagged_count(), 4u);
}

TEST(FlagTest, ConstantCharacteristicWarns) {
  auto profiles = profiles_from({{100, 1, 0}, {200, 1, 0}, {300, 1, 0}});
  const FlagResult r = flag_digests(profiles, 0.9);
  EXPECT_EQ(r.warnings.size(), 2u);
  EXPECT_EQ(r.flagged_count(), 1u);
}

TEST(FlagTest, BadArguments) {
  EXPECT_THROW(flag_digests(profiles_from({{1, 1, 1}}), 0.9), Error);
  EXPECT_THROW(flag_digests(profiles_from({{1, 1, 1}, {2, 2, 2}}), 1.0), Error);
  EXPECT_THROW(flag_digests(profiles_from({{1, 1, 1}, {2, 2, 2}}), 0.0), Error);
}

TEST(PearsonTest, MatchesDefinition) {
  const std::vector<double> x{1, 2, 3, 4, 5}, y{2, 4, 5, 4, 5};
  EXPECT_NEAR(pearson(x, y), 6.0 / std::sqrt(60.0), 1e-15);
  EXPECT_NEAR(pearson(x, x), 1.0, 1e-15);
  const std::vector<double> neg{5, 4, 3, 2, 1};
  EXPECT_NEAR(pearson(x, neg), -1.0, 1e-15);
}

TEST(PearsonTest, DegenerateAndMismatched) {
  const std::vector<double> x{1, 2, 3}, c{4, 4, 4}, shorter{1, 2};
  try {
    pearson(x, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
  EXPECT_THROW(pearson(x, shorter), Error);
}

TEST(ProfileCsvTest, HasHeaderAndOneRowPerProfile) {
  auto r = flag_digests(profiles_from({{1, 1, 1}, {2, 2, 2}}), 0.9);
  const std::string csv = profiles_to_csv(r.profiles);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(csv.find("doc_id"), std::string::npos);
  EXPECT_NE(csv.find("flagged"), std::string::npos);
}

}  // namespace
}  // namespace trigviz
