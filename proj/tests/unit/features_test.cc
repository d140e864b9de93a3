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

#include "oracles.h"
#include "trigviz/error.h"
#include "trigviz/features.h"

namespace trigviz {
namespace {

std::vector<TokenSequence> as_sequences(const std::vector<std::vector<std::string>>& docs) {
  std::vector<TokenSequence> out;
  for (const auto& d : docs) out.push_back(TokenSequence{d});
  return out;
}

TEST(IdfTest, SmoothedFormula) {
  EXPECT_DOUBLE_EQ(smoothed_idf(4, 4), 1.0);
  EXPECT_DOUBLE_EQ(smoothed_idf(4, 1), std::log(5.0 / 2.0) + 1.0);
  EXPECT_DOUBLE_EQ(smoothed_idf(0, 0), 1.0);
}

TEST(VocabularyTest, TopByCountTiesLexicographicIndicesSorted) {
  const auto docs = as_sequences({{"b", "b", "a", "c"}, {"c", "d", "b"}, {"a"}});
  const Vocabulary v = fit_vocabulary(docs, 3);
  ASSERT_EQ(v.size(), 3u);
  // Counts: b 3, a 2, c 2, d 1.
  EXPECT_EQ(v[0].token, "a");
  EXPECT_EQ(v[1].token, "b");
  EXPECT_EQ(v[2].token, "c");
  EXPECT_FALSE(v.index_of("d"));
  EXPECT_EQ(v.index_of("c"), 2u);
  EXPECT_EQ(v[1].df, 2u);
  EXPECT_DOUBLE_EQ(v[1].idf, smoothed_idf(3, 2));
}

TEST(VocabularyTest, EmptyCorpusRejected) {
  const auto docs = as_sequences({{}, {}});
  EXPECT_THROW(fit_vocabulary(docs, 10), Error);
  EXPECT_THROW(fit_vocabulary(as_sequences({{"a"}}), 0), Error);
}

TEST(VocabularyTest, JsonRoundTripKeepsFingerprint) {
  const auto docs = as_sequences({{"coup", "army"}, {"army", "radio", "radio"}});
  const Vocabulary v = fit_vocabulary(docs);
  const Vocabulary back = Vocabulary::from_json(v.to_json());
  EXPECT_EQ(back.to_json(), v.to_json());
  EXPECT_EQ(back.fingerprint(), v.fingerprint());
  EXPECT_EQ(v.fingerprint().size(), 64u);
  const Vocabulary other = fit_vocabulary(as_sequences({{"coup"}}));
  EXPECT_NE(other.fingerprint(), v.fingerprint());
}

TEST(VocabularyTest, MalformedJsonIsDataError) {
  try {
    Vocabulary::from_json("{\"tokens\": 3}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDataError);
  }
  EXPECT_THROW(Vocabulary::from_json("not json"), Error);
}

TEST(TransformTest, MatchesBruteForceOracle) {
  for (uint64_t seed = 100; seed < 140; ++seed) {
    const auto raw = testing::random_token_corpus(seed, 20, 30);
    const int max_features = 3 + static_cast<int>(seed % 9);
    const auto docs = as_sequences(raw);
    const Vocabulary v = fit_vocabulary(docs, max_features);
    const auto expected = testing::oracle_tfidf(raw, max_features);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const DocumentVector x = transform("d", docs[i], v);
      std::map<std::string, double> got;
      for (const auto& [index, w] : x.entries) got[v[index].token] = w;
      ASSERT_EQ(got.size(), expected[i].size()) << "seed " << seed << " doc " << i;
      for (const auto& [token, w] : expected[i]) EXPECT_NEAR(got[token], w, 1e-12);
    }
  }
}

TEST(TransformTest, InvariantsUnitNormSortedPositive) {
  const auto raw = testing::random_token_corpus(7, 20, 40);
  const auto docs = as_sequences(raw);
  const Vocabulary v = fit_vocabulary(docs, 8);
  for (const auto& d : docs) {
    const DocumentVector x = transform("d", d, v);
    EXPECT_EQ(x.vocab_fingerprint, v.fingerprint());
    if (x.entries.empty()) continue;
    EXPECT_NEAR(x.norm(), 1.0, 1e-12);
    for (std::size_t k = 0; k < x.entries.size(); ++k) {
      EXPECT_GT(x.entries[k].second, 0.0);
      if (k) EXPECT_LT(x.entries[k - 1].first, x.entries[k].first);
    }
  }
}

TEST(TransformTest, OutOfVocabularyOnlyGivesEmptyVector) {
  const Vocabulary v = fit_vocabulary(as_sequences({{"a", "b"}}));
  const DocumentVector x = transform("z", TokenSequence{{"zzz", "yyy"}}, v);
  EXPECT_TRUE(x.entries.empty());
  EXPECT_EQ(x.norm(), 0.0);
  EXPECT_EQ(x.weight_at(0), 0.0);
}

TEST(TopTokensTest, MeanScoreRankingAndTies) {
  const auto docs = as_sequences({{"coup", "army"}, {"coup", "radio"}, {"market"}, {"market", "bank"}});
  const Vocabulary v = fit_vocabulary(docs);
  std::vector<DocumentVector> xs;
  for (const auto& d : docs) xs.push_back(transform("d", d, v));
  const std::vector<Label> labels{Label::kPositive, Label::kPositive, Label::kNegative,
                                  Label::kNegative};
  const auto [pos, neg] = top_tokens_per_class(xs, labels, v, 3);
  ASSERT_EQ(pos.ranked.size(), 3u);
  EXPECT_EQ(pos.ranked[0].first, "coup");
  // army and radio tie; lexicographic order breaks it.
  EXPECT_EQ(pos.ranked[1].first, "army");
  EXPECT_EQ(pos.ranked[2].first, "radio");
  EXPECT_EQ(neg.ranked[0].first, "market");
  const auto [pos_all, neg_all] = top_tokens_per_class(xs, labels, v, 100);
  EXPECT_EQ(pos_all.ranked.size(), v.size());
  EXPECT_EQ(pos_all.ranked.back().second, 0.0);
}

TEST(TopTokensTest, ScoreVariants) {
  const auto docs = as_sequences({{"a"}, {"a", "b"}});
  const Vocabulary v = fit_vocabulary(docs);
  std::vector<DocumentVector> xs;
  for (const auto& d : docs) xs.push_back(transform("d", d, v));
  const std::vector<Label> labels{Label::kPositive, Label::kPositive};
  const auto sum = class_token_scores(xs, labels, Label::kPositive, v.size(), ClassScore::kSum);
  const auto mean = class_token_scores(xs, labels, Label::kPositive, v.size(), ClassScore::kMean);
  const auto mx = class_token_scores(xs, labels, Label::kPositive, v.size(), ClassScore::kMax);
  EXPECT_NEAR(sum[0], 2 * mean[0], 1e-15);
  EXPECT_NEAR(mx[0], 1.0, 1e-15);
  EXPECT_THROW(class_token_scores(xs, labels, Label::kNegative, v.size(), ClassScore::kMean), Error);
  EXPECT_EQ(parse_class_score("max"), ClassScore::kMax);
  EXPECT_FALSE(parse_class_score("median"));
}

}  // namespace
}  // namespace trigviz
