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

#include "trigviz/classify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <unordered_map>

#include "canonical_json.h"
#include "trigviz/csv.h"
#include "trigviz/error.h"
#include "trigviz/random.h"

namespace trigviz {
namespace {

double sign_of(Label label) { return label == Label::kPositive ? 1.0 : -1.0; }

double sparse_dot(std::span<const double> dense, const DocumentVector& x) {
  double sum = 0.0;
  for (const auto& [index, value] : x.entries) sum += dense[index] * value;
  return sum;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace

double SvmModel::decision_value(const DocumentVector& vector) const {
  double sum = bias;
  for (const auto& [index, value] : vector.entries) {
    if (index < weights.size()) sum += weights[index] * value;
  }
  return sum;
}

double SvmModel::weight_norm() const {
  double sum = 0.0;
  for (double w : weights) sum += w * w;
  return std::sqrt(sum);
}

std::string SvmModel::to_json() const {
  if (tokens.size() != weights.size()) {
    throw Error(ErrorKind::kInvalidArgument, "only models with token names can be serialized");
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t i = 0; i < weights.size(); ++i) pairs.push_back({tokens[i], weights[i]});
  nlohmann::json doc = {
      {"bias", bias},
      {"hyperparams", {{"epochs", params.epochs}, {"lambda", params.lambda}, {"seed", params.seed}}},
      {"vocab_fingerprint", vocab_fingerprint},
      {"weights", std::move(pairs)}};
  return canonical_dump(doc, 12);
}

SvmModel SvmModel::from_json(std::string_view json_text) {
  const nlohmann::json doc = parse_json(json_text, "model");
  try {
    SvmModel model;
    model.bias = doc.at("bias").get<double>();
    const auto& hp = doc.at("hyperparams");
    model.params.epochs = hp.at("epochs").get<int>();
    model.params.lambda = hp.at("lambda").get<double>();
    model.params.seed = hp.at("seed").get<uint64_t>();
    model.vocab_fingerprint = doc.at("vocab_fingerprint").get<std::string>();
    for (const auto& pair : doc.at("weights")) {
      model.tokens.push_back(pair.at(0).get<std::string>());
      model.weights.push_back(pair.at(1).get<double>());
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kDataError, std::string("model: ") + e.what());
  }
}

double svm_objective(std::span<const double> weights, double bias,
                     std::span<const DocumentVector> vectors, std::span<const Label> labels,
                     double lambda) {
  double sq = 0.0;
  for (double w : weights) sq += w * w;
  double loss = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const double margin = sign_of(labels[i]) * (sparse_dot(weights, vectors[i]) + bias);
    loss += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * lambda * sq + loss / static_cast<double>(vectors.size());
}

SvmModel train_linear(std::span<const DocumentVector> vectors, std::span<const Label> labels,
                      std::size_t dimension, const SvmParams& params, TrainTrace* trace) {
  if (vectors.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "vectors and labels differ in length");
  }
  if (!(params.lambda > 0.0)) throw Error(ErrorKind::kInvalidArgument, "lambda must be > 0");
  if (params.epochs < 1) throw Error(ErrorKind::kInvalidArgument, "epochs must be >= 1");
  const bool has_pos = std::find(labels.begin(), labels.end(), Label::kPositive) != labels.end();
  const bool has_neg = std::find(labels.begin(), labels.end(), Label::kNegative) != labels.end();
  if (!has_pos || !has_neg) {
    throw Error(ErrorKind::kInvalidArgument, "training needs examples of both classes");
  }
  bool any_nonzero = false;
  for (const DocumentVector& x : vectors) {
    for (const auto& [index, value] : x.entries) {
      if (index >= dimension) {
        throw Error(ErrorKind::kInvalidArgument, "feature index outside the model dimension");
      }
      if (value != 0.0) any_nonzero = true;
    }
  }
  if (!any_nonzero) throw Error(ErrorKind::kInvalidArgument, "training vectors are all zero");

  const std::size_t n = vectors.size();
  const double radius = 1.0 / std::sqrt(params.lambda);

  // w = scale * v keeps the per-step shrink O(1).
  std::vector<double> v(dimension, 0.0);
  double scale = 1.0;
  double sq_v = 0.0;
  double bias = 0.0;
  std::vector<double> sum_w;
  double sum_b = 0.0;
  if (trace) {
    trace->weight_norms.clear();
    trace->averaged_objective.clear();
    sum_w.assign(dimension, 0.0);
  }

  auto renormalize = [&] {
    for (double& x : v) x *= scale;
    scale = 1.0;
    sq_v = 0.0;
    for (double x : v) sq_v += x * x;
  };

  Rng rng(params.seed);
  std::vector<std::size_t> order(n);
  uint64_t t = 0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (params.lambda * static_cast<double>(t));
      const double y = sign_of(labels[i]);
      const double margin = y * (scale * sparse_dot(v, vectors[i]) + bias);

      scale *= 1.0 - eta * params.lambda;
      if (scale <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
        sq_v = 0.0;
      }
      if (margin < 1.0) {
        const double step = eta * y / scale;
        for (const auto& [index, value] : vectors[i].entries) {
          const double old = v[index];
          v[index] = old + step * value;
          sq_v += v[index] * v[index] - old * old;
        }
        bias += eta * y;
      }
      const double norm = scale * std::sqrt(std::max(sq_v, 0.0));
      if (norm > radius) scale *= radius / norm;
      if (scale < 1e-9) renormalize();

      if (trace) {
        for (std::size_t d = 0; d < dimension; ++d) sum_w[d] += scale * v[d];
        sum_b += bias;
      }
    }
    renormalize();
    if (trace) {
      trace->weight_norms.push_back(std::sqrt(sq_v));
      std::vector<double> avg(dimension);
      const double inv = 1.0 / static_cast<double>(t);
      for (std::size_t d = 0; d < dimension; ++d) avg[d] = sum_w[d] * inv;
      trace->averaged_objective.push_back(
          svm_objective(avg, sum_b * inv, vectors, labels, params.lambda));
    }
  }

  SvmModel model;
  model.weights = std::move(v);
  model.bias = bias;
  model.params = params;
  return model;
}

SvmModel train(std::span<const DocumentVector> vectors, std::span<const Label> labels,
               const Vocabulary& vocab, const SvmParams& params, TrainTrace* trace) {
  for (const DocumentVector& x : vectors) {
    if (x.vocab_fingerprint != vocab.fingerprint()) {
      throw Error(ErrorKind::kFingerprintMismatch,
                  "training vector \"" + x.doc_id + "\" was built against another vocabulary");
    }
  }
  SvmModel model = train_linear(vectors, labels, vocab.size(), params, trace);
  model.vocab_fingerprint = vocab.fingerprint();
  model.tokens.reserve(vocab.size());
  for (const auto& entry : vocab.entries()) model.tokens.push_back(entry.token);
  return model;
}

Prediction predict(const SvmModel& model, const DocumentVector& vector) {
  if (vector.vocab_fingerprint != model.vocab_fingerprint) {
    throw Error(ErrorKind::kFingerprintMismatch,
                "vector \"" + vector.doc_id + "\" was built against vocabulary " +
                    vector.vocab_fingerprint.substr(0, 12) + " but the model expects " +
                    model.vocab_fingerprint.substr(0, 12));
  }
  Prediction p;
  p.doc_id = vector.doc_id;
  p.decision_value = model.decision_value(vector);
  p.label = p.decision_value > 0.0 ? Label::kPositive : Label::kNegative;
  return p;
}

double training_accuracy(const SvmModel& model, std::span<const DocumentVector> vectors,
                         std::span<const Label> labels) {
  if (vectors.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const Label predicted = model.decision_value(vectors[i]) > 0.0 ? Label::kPositive
                                                                    : Label::kNegative;
    if (predicted == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(vectors.size());
}

double kfold_accuracy(std::span<const DocumentVector> vectors, std::span<const Label> labels,
                      std::size_t dimension, const SvmParams& params, int folds) {
  if (folds < 2 || static_cast<std::size_t>(folds) > vectors.size()) {
    throw Error(ErrorKind::kInvalidArgument, "fold count out of range");
  }
  double total = 0.0;
  int used = 0;
  const std::size_t n = vectors.size();
  for (int f = 0; f < folds; ++f) {
    const std::size_t lo = n * static_cast<std::size_t>(f) / static_cast<std::size_t>(folds);
    const std::size_t hi = n * static_cast<std::size_t>(f + 1) / static_cast<std::size_t>(folds);
    std::vector<DocumentVector> train_x;
    std::vector<Label> train_y;
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= lo && i < hi) continue;
      train_x.push_back(vectors[i]);
      train_y.push_back(labels[i]);
    }
    const bool both = std::count(train_y.begin(), train_y.end(), Label::kPositive) > 0 &&
                      std::count(train_y.begin(), train_y.end(), Label::kNegative) > 0;
    if (!both) continue;
    const SvmModel model = train_linear(train_x, train_y, dimension, params);
    total += training_accuracy(model, vectors.subspan(lo, hi - lo), labels.subspan(lo, hi - lo));
    ++used;
  }
  return used ? total / used : 0.0;
}

TokenSequence TextPipeline::tokens(const Article& article) const {
  return trigviz::refine(normalize(article.text), stopwords, refine);
}

std::vector<TokenSequence> TextPipeline::tokens(const Corpus& corpus) const {
  std::vector<TokenSequence> out;
  out.reserve(corpus.size());
  for (const Article& a : corpus.articles()) out.push_back(tokens(a));
  return out;
}

std::optional<VocabMode> parse_vocab_mode(std::string_view name) {
  if (name == "shared") return VocabMode::kShared;
  if (name == "refit") return VocabMode::kRefit;
  return std::nullopt;
}

std::string_view vocab_mode_name(VocabMode mode) {
  return mode == VocabMode::kShared ? "shared" : "refit";
}

SvmModel reindex_model(const SvmModel& model, const Vocabulary& vocab) {
  if (model.tokens.size() != model.weights.size() || model.tokens.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "model has no token-name map; it cannot be re-indexed onto another vocabulary");
  }
  std::unordered_map<std::string_view, double> by_token;
  for (std::size_t i = 0; i < model.tokens.size(); ++i) by_token[model.tokens[i]] = model.weights[i];
  SvmModel out;
  out.bias = model.bias;
  out.params = model.params;
  out.vocab_fingerprint = vocab.fingerprint();
  out.weights.reserve(vocab.size());
  out.tokens.reserve(vocab.size());
  for (const auto& entry : vocab.entries()) {
    auto it = by_token.find(entry.token);
    out.weights.push_back(it == by_token.end() ? 0.0 : it->second);
    out.tokens.push_back(entry.token);
  }
  return out;
}

ClassificationRun classify_corpus(const Corpus& corpus, const SvmModel& model,
                                  const Vocabulary& training_vocab, VocabMode mode,
                                  const TextPipeline& pipeline) {
  ClassificationRun run;
  run.corpus_name = corpus.name();
  run.mode = mode;
  const std::vector<TokenSequence> docs = pipeline.tokens(corpus);

  if (mode == VocabMode::kShared) {
    run.vocab = training_vocab;
    run.model = model;
  } else {
    if (model.tokens.empty()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "refit mode needs a model with a token-name map");
    }
    run.vocab = fit_vocabulary(docs, training_vocab.max_features());
    run.model = reindex_model(model, run.vocab);
  }

  run.vectors.reserve(corpus.size());
  run.predictions.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Article& article = corpus[i];
    run.vectors.push_back(transform(article.doc_id, docs[i], run.vocab));
    Prediction p = predict(run.model, run.vectors.back());
    p.country_label = article.country_label;
    p.pub_date = article.pub_date;
    run.predictions.push_back(std::move(p));

    if (mode == VocabMode::kRefit) {
      std::set<std::string> changed;
      for (const auto& [index, weight] : run.vectors.back().entries) {
        const auto& entry = run.vocab[index];
        const auto train_index = training_vocab.index_of(entry.token);
        if (!train_index || training_vocab[*train_index].idf != entry.idf) {
          changed.insert(entry.token);
        }
      }
      run.idf_changed_tokens.emplace_back(changed.begin(), changed.end());
    }
  }
  return run;
}

std::string predictions_to_csv(std::span<const Prediction> predictions) {
  csv::Writer writer({"doc_id", "label", "decision_value", "country_label", "pub_date"});
  for (const Prediction& p : predictions) {
    writer.add_row({p.doc_id, std::string(label_name(p.label)), format_number(p.decision_value),
                    p.country_label, p.pub_date ? format_iso_date(*p.pub_date) : ""});
  }
  return writer.str();
}

std::vector<Prediction> parse_predictions_csv(std::string_view csv_text) {
  const csv::Table table = csv::parse(csv_text);
  const int id = table.column("doc_id");
  const int label = table.column("label");
  const int value = table.column("decision_value");
  const int country = table.column("country_label");
  const int date = table.column("pub_date");
  if (id < 0 || label < 0 || value < 0) {
    throw Error(ErrorKind::kNotFound, "predictions file needs doc_id,label,decision_value");
  }
  std::vector<Prediction> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size()) {
      throw Error(ErrorKind::kDataError, "predictions row " + std::to_string(r + 1) + " malformed");
    }
    Prediction p;
    p.doc_id = row[static_cast<std::size_t>(id)];
    const auto parsed = parse_label(row[static_cast<std::size_t>(label)]);
    if (!parsed) throw Error(ErrorKind::kDataError, "bad label in predictions row " + std::to_string(r + 1));
    p.label = *parsed;
    p.decision_value = std::strtod(row[static_cast<std::size_t>(value)].c_str(), nullptr);
    if (country >= 0) p.country_label = row[static_cast<std::size_t>(country)];
    if (date >= 0 && !row[static_cast<std::size_t>(date)].empty()) {
      p.pub_date = parse_iso_date(row[static_cast<std::size_t>(date)]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace trigviz
