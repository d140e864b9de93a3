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
#include "trigviz/classify.h"
#include "trigviz/error.h"

namespace trigviz {
namespace {

struct Fixture {
  SynthCorpus synth;
  Vocabulary vocab;
  std::vector<DocumentVector> vectors;
  TextPipeline pipeline;
};

Fixture make_fixture(int n = 300, uint64_t seed = 42) {
  SynthParams p;
  p.n_articles = n;
  p.seed = seed;
  Fixture f{synth_corpus(p, default_lexicons()), {}, {},
            TextPipeline{parse_stopwords(builtin_stopwords()), {}}};
  const auto docs = f.pipeline.tokens(f.synth.corpus);
  f.vocab = fit_vocabulary(docs);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    f.vectors.push_back(transform(f.synth.corpus[i].doc_id, docs[i], f.vocab));
  }
  return f;
}

std::vector<DocumentVector> orthogonal_pair() {
  std::vector<DocumentVector> xs(2);
  xs[0].entries = {{0u, 1.0}};
  xs[1].entries = {{1u, 1.0}};
  return xs;
}

TEST(ObjectiveTest, MatchesHandComputation) {
  const auto xs = orthogonal_pair();
  const std::vector<Label> y{Label::kPositive, Label::kNegative};
  const std::vector<double> w{0.5, -2.0};
  // Margins: 0.5 + 0.1 = 0.6 (loss 0.4) and 2.0 - 0.1 = 1.9 (loss 0).
  EXPECT_NEAR(svm_objective(w, 0.1, xs, y, 0.2), 0.1 * 4.25 + 0.2, 1e-15);
}

TEST(PegasosTest, OrthogonalPairReachesUnitMargins) {
  const auto xs = orthogonal_pair();
  const std::vector<Label> y{Label::kPositive, Label::kNegative};
  for (double lambda : {1e-4, 1e-2, 0.1}) {
    const SvmModel m = train_linear(xs, y, 2, {lambda, 100, 7});
    EXPECT_GE(m.decision_value(xs[0]), 1.0 - 1e-9) << lambda;
    EXPECT_LE(m.decision_value(xs[1]), -1.0 + 1e-9) << lambda;
    EXPECT_LE(m.weight_norm(), 1.0 / std::sqrt(lambda) + 1e-9);
  }
}

TEST(PegasosTest, AveragedObjectiveNeverIncreases) {
  const Fixture f = make_fixture(200);
  TrainTrace trace;
  const SvmModel m = train(f.vectors, f.synth.labels, f.vocab, {1e-4, 30, 7}, &trace);
  ASSERT_EQ(trace.averaged_objective.size(), 30u);
  ASSERT_EQ(trace.weight_norms.size(), 30u);
  for (std::size_t e = 1; e < trace.averaged_objective.size(); ++e) {
    EXPECT_LE(trace.averaged_objective[e], trace.averaged_objective[e - 1] + 1e-6) << e;
  }
  for (double norm : trace.weight_norms) EXPECT_LE(norm, 100.0 + 1e-9);
  EXPECT_NEAR(trace.weight_norms.back(), m.weight_norm(), 1e-9);
}

TEST(PegasosTest, DeterministicPerSeed) {
  const Fixture f = make_fixture(150);
  const SvmModel a = train(f.vectors, f.synth.labels, f.vocab);
  const SvmModel b = train(f.vectors, f.synth.labels, f.vocab);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
  const SvmModel c = train(f.vectors, f.synth.labels, f.vocab, {1e-4, 100, 8});
  EXPECT_NE(a.weights, c.weights);
}

TEST(PegasosTest, SeparatesPlantedCorpus) {
  const Fixture f = make_fixture(300);
  const SvmModel m = train(f.vectors, f.synth.labels, f.vocab);
  EXPECT_GE(training_accuracy(m, f.vectors, f.synth.labels), 0.95);
  EXPECT_GT(m.weights[*f.vocab.index_of("coup")], 0.0);
  EXPECT_GE(kfold_accuracy(f.vectors, f.synth.labels, f.vocab.size(), {}, 5), 0.9);
}

TEST(PegasosTest, RejectsBadInputs) {
  const auto xs = orthogonal_pair();
  const std::vector<Label> same{Label::kPositive, Label::kPositive};
  const std::vector<Label> y{Label::kPositive, Label::kNegative};
  EXPECT_THROW(train_linear(xs, same, 2), Error);
  EXPECT_THROW(train_linear(xs, y, 1), Error);
  EXPECT_THROW(train_linear(xs, y, 2, {0.0, 10, 1}), Error);
  EXPECT_THROW(train_linear(xs, y, 2, {1e-4, 0, 1}), Error);
  std::vector<DocumentVector> empty(2);
  EXPECT_THROW(train_linear(empty, y, 2), Error);
  EXPECT_THROW(kfold_accuracy(xs, y, 2, {}, 1), Error);
}

TEST(ModelTest, JsonRoundTripPredictsIdentically) {
  const Fixture f = make_fixture(120);
  const SvmModel m = train(f.vectors, f.synth.labels, f.vocab);
  const SvmModel back = SvmModel::from_json(m.to_json());
  EXPECT_EQ(back.to_json(), m.to_json());
  EXPECT_EQ(back.tokens, m.tokens);
  for (const auto& x : f.vectors) {
    EXPECT_NEAR(back.decision_value(x), m.decision_value(x), 1e-9);
  }
  EXPECT_THROW(SvmModel::from_json("{\"bias\": 1}"), Error);
}

TEST(PredictTest, PositiveOnlyAboveZeroAndFingerprintChecked) {
  const Fixture f = make_fixture(120);
  SvmModel m = train(f.vectors, f.synth.labels, f.vocab);
  const Prediction p = predict(m, f.vectors[0]);
  EXPECT_EQ(p.label == Label::kPositive, p.decision_value > 0.0);

  SvmModel zero = m;
  std::fill(zero.weights.begin(), zero.weights.end(), 0.0);
  zero.bias = 0.0;
  EXPECT_EQ(predict(zero, f.vectors[0]).label, Label::kNegative);

  DocumentVector foreign = f.vectors[0];
  foreign.vocab_fingerprint = "other";
  try {
    predict(m, foreign);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFingerprintMismatch);
  }
}

TEST(ReindexTest, CarriesWeightsByToken) {
  SvmModel m;
  m.tokens = {"army", "coup", "radio"};
  m.weights = {0.5, 2.0, -1.0};
  m.bias = 0.25;
  const Vocabulary v({{"coup", 1, 1.0}, {"market", 1, 1.0}, {"radio", 1, 1.0}}, 1, 10);
  const SvmModel r = reindex_model(m, v);
  EXPECT_EQ(r.weights, (std::vector<double>{2.0, 0.0, -1.0}));
  EXPECT_EQ(r.bias, 0.25);
  EXPECT_EQ(r.vocab_fingerprint, v.fingerprint());
  SvmModel anonymous;
  anonymous.weights = {1.0};
  EXPECT_THROW(reindex_model(anonymous, v), Error);
}

TEST(ClassifyCorpusTest, RefitOnTrainingCorpusEqualsShared) {
  const Fixture f = make_fixture(150);
  const SvmModel m = train(f.vectors, f.synth.labels, f.vocab);
  const ClassificationRun shared =
      classify_corpus(f.synth.corpus, m, f.vocab, VocabMode::kShared, f.pipeline);
  const ClassificationRun refit =
      classify_corpus(f.synth.corpus, m, f.vocab, VocabMode::kRefit, f.pipeline);
  EXPECT_EQ(refit.vocab.fingerprint(), f.vocab.fingerprint());
  ASSERT_EQ(shared.predictions.size(), refit.predictions.size());
  for (std::size_t i = 0; i < shared.predictions.size(); ++i) {
    EXPECT_EQ(shared.predictions[i].label, refit.predictions[i].label);
    EXPECT_TRUE(refit.idf_changed_tokens[i].empty());
  }
  EXPECT_TRUE(shared.idf_changed_tokens.empty());
  EXPECT_EQ(shared.predictions[0].country_label, f.synth.corpus[0].country_label);
}

TEST(ClassifyCorpusTest, RefitOnSubsetChangesIdf) {
  const Fixture f = make_fixture(150);
  const SvmModel m = train(f.vectors, f.synth.labels, f.vocab);
  std::vector<Article> half(f.synth.corpus.articles().begin(),
                            f.synth.corpus.articles().begin() + 40);
  const Corpus subset("subset", std::move(half));
  const ClassificationRun refit = classify_corpus(subset, m, f.vocab, VocabMode::kRefit, f.pipeline);
  EXPECT_NE(refit.vocab.fingerprint(), f.vocab.fingerprint());
  std::size_t changed = 0;
  for (const auto& tokens : refit.idf_changed_tokens) changed += tokens.size();
  EXPECT_GT(changed, 0u);
}

TEST(PredictionsCsvTest, RoundTrip) {
  std::vector<Prediction> preds{
      {"a", Label::kPositive, 0.75, "Chile", parse_iso_date("1973-09-10")},
      {"b", Label::kNegative, -1.5, "Peru, Republic of", std::nullopt}};
  const auto back = parse_predictions_csv(predictions_to_csv(preds));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].doc_id, "a");
  EXPECT_EQ(back[0].label, Label::kPositive);
  EXPECT_DOUBLE_EQ(back[0].decision_value, 0.75);
  EXPECT_EQ(back[1].country_label, "Peru, Republic of");
  EXPECT_FALSE(back[1].pub_date);
  EXPECT_EQ(back[0].pub_date, preds[0].pub_date);
  EXPECT_THROW(parse_predictions_csv("doc_id,label\nx,positive\n"), Error);
}

}  // namespace
}  // namespace trigviz
