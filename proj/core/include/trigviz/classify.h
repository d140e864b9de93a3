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

#ifndef TRIGVIZ_CLASSIFY_H_
#define TRIGVIZ_CLASSIFY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigviz/corpus.h"
#include "trigviz/features.h"
#include "trigviz/preprocess.h"

namespace trigviz {

struct SvmParams {
  double lambda = 1e-4;
  int epochs = 100;
  uint64_t seed = 7;
};

// Linear SVM: decision value w.x + b. `tokens` names each weight and is what
// lets a model be re-indexed onto another vocabulary; it may be empty for
// models trained on anonymous features (e.g. 2-D coordinates).
struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  SvmParams params;
  std::string vocab_fingerprint;
  std::vector<std::string> tokens;

  double decision_value(const DocumentVector& vector) const;
  double weight_norm() const;

  // Canonical JSON: sorted keys, weights as (token, weight) pairs at 12
  // significant digits.
  std::string to_json() const;
  static SvmModel from_json(std::string_view json_text);
};

// Per-epoch diagnostics from training.
struct TrainTrace {
  std::vector<double> weight_norms;  // ||w|| of the iterate at each epoch end
  // Objective of the running average of all iterates up to each epoch end.
  std::vector<double> averaged_objective;
};

// lambda/2 ||w||^2 + (1/n) sum max(0, 1 - y (w.x + b)).
double svm_objective(std::span<const double> weights, double bias,
                     std::span<const DocumentVector> vectors, std::span<const Label> labels,
                     double lambda);

// Primal stochastic subgradient descent on the hinge loss. Step t uses
// learning rate 1/(lambda t); w is projected onto the ball of radius
// 1/sqrt(lambda) after every update; the bias is an unregularized intercept
// with the same learning rate. Samples are visited in a seeded shuffle per
// epoch, so the result is bit-for-bit deterministic in (inputs, params).
// Vector indices must be < dimension.
SvmModel train_linear(std::span<const DocumentVector> vectors, std::span<const Label> labels,
                      std::size_t dimension, const SvmParams& params = {},
                      TrainTrace* trace = nullptr);

// train_linear over a vocabulary's feature space; records the fingerprint and
// token names.
SvmModel train(std::span<const DocumentVector> vectors, std::span<const Label> labels,
               const Vocabulary& vocab, const SvmParams& params = {},
               TrainTrace* trace = nullptr);

struct Prediction {
  std::string doc_id;
  Label label = Label::kNegative;
  double decision_value = 0.0;
  std::string country_label;
  std::optional<Date> pub_date;
};

// Positive iff the decision value is strictly greater than zero. Throws
// kFingerprintMismatch when the vector was built against another vocabulary.
Prediction predict(const SvmModel& model, const DocumentVector& vector);

double training_accuracy(const SvmModel& model, std::span<const DocumentVector> vectors,
                         std::span<const Label> labels);

// Mean held-out accuracy over `folds` contiguous folds.
double kfold_accuracy(std::span<const DocumentVector> vectors, std::span<const Label> labels,
                      std::size_t dimension, const SvmParams& params, int folds);

// Text -> token pipeline shared by training and classification.
struct TextPipeline {
  StopwordSet stopwords;
  RefineOptions refine;

  TokenSequence tokens(const Article& article) const;
  std::vector<TokenSequence> tokens(const Corpus& corpus) const;
};

enum class VocabMode { kShared, kRefit };

std::optional<VocabMode> parse_vocab_mode(std::string_view name);
std::string_view vocab_mode_name(VocabMode mode);

// Carries the weights over to `vocab` by token name; tokens unknown to the
// model get weight 0. Throws kInvalidArgument when the model has no names.
SvmModel reindex_model(const SvmModel& model, const Vocabulary& vocab);

struct ClassificationRun {
  std::string corpus_name;
  VocabMode mode = VocabMode::kShared;
  Vocabulary vocab;  // the vocabulary the vectors were built with
  SvmModel model;    // the model as applied (re-indexed in refit mode)
  std::vector<DocumentVector> vectors;
  std::vector<Prediction> predictions;
  // Refit mode only: per article, the in-document tokens whose idf differs
  // from the training vocabulary.
  std::vector<std::vector<std::string>> idf_changed_tokens;
};

// Shared mode vectorizes with the training vocabulary. Refit mode fits a
// fresh vocabulary on `corpus` (same max_features) and re-indexes the model
// onto it, which reproduces per-corpus idf drift.
ClassificationRun classify_corpus(const Corpus& corpus, const SvmModel& model,
                                  const Vocabulary& training_vocab, VocabMode mode,
                                  const TextPipeline& pipeline);

std::string predictions_to_csv(std::span<const Prediction> predictions);
std::vector<Prediction> parse_predictions_csv(std::string_view csv_text);

}  // namespace trigviz

#endif  // TRIGVIZ_CLASSIFY_H_
