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

#ifndef TRIGVIZ_FEATURES_H_
#define TRIGVIZ_FEATURES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trigviz/corpus.h"
#include "trigviz/preprocess.h"

namespace trigviz {

inline constexpr int kDefaultMaxFeatures = 5000;
inline constexpr int kDefaultTopTokens = 20;

// Smoothed inverse document frequency, ln((1 + n) / (1 + df)) + 1.
double smoothed_idf(std::size_t n_documents, std::size_t document_frequency);

// Bounded token -> index map with document statistics. Indices follow the
// lexicographic (byte) order of the tokens.
class Vocabulary {
 public:
  struct Entry {
    std::string token;
    std::size_t df = 0;
    double idf = 1.0;
  };

  Vocabulary() = default;
  // `entries` must already be sorted by token and unique.
  Vocabulary(std::vector<Entry> entries, std::size_t n_documents, int max_features);

  std::size_t size() const { return entries_.size(); }
  std::size_t n_documents() const { return n_documents_; }
  int max_features() const { return max_features_; }
  std::span<const Entry> entries() const { return entries_; }
  const Entry& operator[](std::size_t index) const { return entries_[index]; }

  std::optional<uint32_t> index_of(std::string_view token) const;

  // Canonical JSON: sorted keys, idf at 12 significant digits.
  std::string to_json() const;
  static Vocabulary from_json(std::string_view json_text);

  // SHA-256 hex of to_json().
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::vector<Entry> entries_;
  std::size_t n_documents_ = 0;
  int max_features_ = kDefaultMaxFeatures;
  std::string fingerprint_;
};

// Keeps the max_features tokens with the highest total count (ties broken
// lexicographically); df and idf are computed over the same documents.
// Throws kInvalidArgument when every document is empty.
Vocabulary fit_vocabulary(std::span<const TokenSequence> docs,
                          int max_features = kDefaultMaxFeatures);

// Sparse L2-normalized tf-idf vector. Indices strictly increasing, weights
// positive. Empty when the document has no in-vocabulary token.
struct DocumentVector {
  std::string doc_id;
  std::vector<std::pair<uint32_t, double>> entries;
  std::string vocab_fingerprint;

  double norm() const;
  double weight_at(uint32_t index) const;  // 0 when absent
};

// Raw count x idf, then L2 normalization. Out-of-vocabulary tokens ignored.
DocumentVector transform(std::string doc_id, const TokenSequence& doc, const Vocabulary& vocab);

enum class ClassScore { kMean, kSum, kMax };

std::optional<ClassScore> parse_class_score(std::string_view name);
std::string_view class_score_name(ClassScore score);

struct ClassTokenRanking {
  Label label = Label::kPositive;
  std::vector<std::pair<std::string, double>> ranked;  // descending score
};

// Per-class aggregate of each token's tf-idf weight (absent = 0). Returns the
// top-k for each class, descending, ties lexicographic. Throws when a class
// has no documents.
std::pair<ClassTokenRanking, ClassTokenRanking> top_tokens_per_class(
    std::span<const DocumentVector> vectors, std::span<const Label> labels,
    const Vocabulary& vocab, int k = kDefaultTopTokens, ClassScore score = ClassScore::kMean);

// Full per-token score for one class, indexed like the vocabulary.
std::vector<double> class_token_scores(std::span<const DocumentVector> vectors,
                                       std::span<const Label> labels, Label label,
                                       std::size_t vocab_size, ClassScore score);

}  // namespace trigviz

#endif  // TRIGVIZ_FEATURES_H_
