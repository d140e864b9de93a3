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

#include "trigviz/features.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "canonical_json.h"
#include "trigviz/error.h"
#include "trigviz/hash.h"

namespace trigviz {

double smoothed_idf(std::size_t n_documents, std::size_t document_frequency) {
  return std::log((1.0 + static_cast<double>(n_documents)) /
                  (1.0 + static_cast<double>(document_frequency))) +
         1.0;
}

Vocabulary::Vocabulary(std::vector<Entry> entries, std::size_t n_documents, int max_features)
    : entries_(std::move(entries)), n_documents_(n_documents), max_features_(max_features) {
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (!(entries_[i - 1].token < entries_[i].token)) {
      throw Error(ErrorKind::kInvalidArgument, "vocabulary tokens must be sorted and unique");
    }
  }
  fingerprint_ = sha256_hex(to_json());
}

std::optional<uint32_t> Vocabulary::index_of(std::string_view token) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), token,
                             [](const Entry& e, std::string_view t) { return e.token < t; });
  if (it == entries_.end() || it->token != token) return std::nullopt;
  return static_cast<uint32_t>(it - entries_.begin());
}

std::string Vocabulary::to_json() const {
  nlohmann::json tokens = nlohmann::json::array();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    tokens.push_back({{"token", entries_[i].token},
                      {"index", i},
                      {"df", entries_[i].df},
                      {"idf", entries_[i].idf}});
  }
  nlohmann::json doc = {{"max_features", max_features_},
                        {"n_documents", n_documents_},
                        {"tokens", std::move(tokens)}};
  return canonical_dump(doc, 12);
}

Vocabulary Vocabulary::from_json(std::string_view json_text) {
  const nlohmann::json doc = parse_json(json_text, "vocabulary");
  try {
    std::vector<Entry> entries;
    for (const auto& t : doc.at("tokens")) {
      const std::size_t index = t.at("index").get<std::size_t>();
      if (index != entries.size()) {
        throw Error(ErrorKind::kDataError, "vocabulary indices must be dense and ordered");
      }
      entries.push_back({t.at("token").get<std::string>(), t.at("df").get<std::size_t>(),
                         t.at("idf").get<double>()});
    }
    return Vocabulary(std::move(entries), doc.at("n_documents").get<std::size_t>(),
                      doc.at("max_features").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kDataError, std::string("vocabulary: ") + e.what());
  }
}

Vocabulary fit_vocabulary(std::span<const TokenSequence> docs, int max_features) {
  if (max_features < 1) throw Error(ErrorKind::kInvalidArgument, "max_features must be >= 1");
  std::map<std::string, std::pair<std::size_t, std::size_t>> stats;  // token -> (total, df)
  for (const TokenSequence& doc : docs) {
    std::map<std::string_view, std::size_t> counts;
    for (const std::string& t : doc.tokens) ++counts[t];
    for (const auto& [token, count] : counts) {
      auto& s = stats[std::string(token)];
      s.first += count;
      s.second += 1;
    }
  }
  if (stats.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot fit a vocabulary: every document is empty");
  }

  std::vector<const std::pair<const std::string, std::pair<std::size_t, std::size_t>>*> ranked;
  ranked.reserve(stats.size());
  for (const auto& entry : stats) ranked.push_back(&entry);
  // stats is already in token order, so a stable sort on count alone breaks
  // ties lexicographically.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto* a, const auto* b) { return a->second.first > b->second.first; });
  ranked.resize(std::min(ranked.size(), static_cast<std::size_t>(max_features)));
  std::sort(ranked.begin(), ranked.end(), [](const auto* a, const auto* b) {
    return a->first < b->first;
  });

  std::vector<Vocabulary::Entry> entries;
  entries.reserve(ranked.size());
  for (const auto* entry : ranked) {
    entries.push_back({entry->first, entry->second.second,
                       smoothed_idf(docs.size(), entry->second.second)});
  }
  return Vocabulary(std::move(entries), docs.size(), max_features);
}

double DocumentVector::norm() const {
  double sum = 0.0;
  for (const auto& [index, weight] : entries) sum += weight * weight;
  return std::sqrt(sum);
}

double DocumentVector::weight_at(uint32_t index) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), index,
                             [](const auto& e, uint32_t i) { return e.first < i; });
  return it != entries.end() && it->first == index ? it->second : 0.0;
}

DocumentVector transform(std::string doc_id, const TokenSequence& doc, const Vocabulary& vocab) {
  DocumentVector out;
  out.doc_id = std::move(doc_id);
  out.vocab_fingerprint = vocab.fingerprint();
  std::map<uint32_t, std::size_t> counts;
  for (const std::string& t : doc.tokens) {
    if (auto index = vocab.index_of(t)) ++counts[*index];
  }
  if (counts.empty()) return out;
  out.entries.reserve(counts.size());
  double sum = 0.0;
  for (const auto& [index, count] : counts) {
    const double w = static_cast<double>(count) * vocab[index].idf;
    out.entries.emplace_back(index, w);
    sum += w * w;
  }
  const double norm = std::sqrt(sum);
  for (auto& entry : out.entries) entry.second /= norm;
  return out;
}

std::optional<ClassScore> parse_class_score(std::string_view name) {
  if (name == "mean") return ClassScore::kMean;
  if (name == "sum") return ClassScore::kSum;
  if (name == "max") return ClassScore::kMax;
  return std::nullopt;
}

std::string_view class_score_name(ClassScore score) {
  switch (score) {
    case ClassScore::kMean: return "mean";
    case ClassScore::kSum: return "sum";
    case ClassScore::kMax: return "max";
  }
  return "mean";
}

std::vector<double> class_token_scores(std::span<const DocumentVector> vectors,
                                       std::span<const Label> labels, Label label,
                                       std::size_t vocab_size, ClassScore score) {
  if (vectors.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "vectors and labels differ in length");
  }
  std::vector<double> scores(vocab_size, 0.0);
  std::size_t members = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (labels[i] != label) continue;
    ++members;
    for (const auto& [index, weight] : vectors[i].entries) {
      if (index >= vocab_size) {
        throw Error(ErrorKind::kInvalidArgument, "vector index outside the vocabulary");
      }
      if (score == ClassScore::kMax) {
        scores[index] = std::max(scores[index], weight);
      } else {
        scores[index] += weight;
      }
    }
  }
  if (members == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "class " + std::string(label_name(label)) + " has no documents");
  }
  if (score == ClassScore::kMean) {
    for (double& s : scores) s /= static_cast<double>(members);
  }
  return scores;
}

std::pair<ClassTokenRanking, ClassTokenRanking> top_tokens_per_class(
    std::span<const DocumentVector> vectors, std::span<const Label> labels,
    const Vocabulary& vocab, int k, ClassScore score) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  auto rank = [&](Label label) {
    const std::vector<double> scores =
        class_token_scores(vectors, labels, label, vocab.size(), score);
    std::vector<uint32_t> order(vocab.size());
    std::iota(order.begin(), order.end(), 0u);
    // Index order is token order, so a stable sort keeps ties lexicographic.
    std::stable_sort(order.begin(), order.end(),
                     [&](uint32_t a, uint32_t b) { return scores[a] > scores[b]; });
    ClassTokenRanking ranking;
    ranking.label = label;
    const std::size_t top = std::min(order.size(), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < top; ++i) {
      ranking.ranked.emplace_back(vocab[order[i]].token, scores[order[i]]);
    }
    return ranking;
  };
  ClassTokenRanking positive = rank(Label::kPositive);
  ClassTokenRanking negative = rank(Label::kNegative);
  return {std::move(positive), std::move(negative)};
}

}  // namespace trigviz
