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

#ifndef TRIGVIZ_VALIDATE_H_
#define TRIGVIZ_VALIDATE_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigviz/classify.h"
#include "trigviz/corpus.h"
#include "trigviz/features.h"

namespace trigviz {

enum class CorpusTag { kDependentSpace, kNullSpace };

std::string_view corpus_tag_name(CorpusTag tag);

struct TimelineRecord {
  std::string country;
  Date pub_date;
  std::string doc_id;
  Label label = Label::kPositive;
  bool in_window = false;
  CorpusTag corpus_tag = CorpusTag::kNullSpace;
};

struct MonthlyCount {
  std::string country;
  std::string month;  // YYYY-MM
  CorpusTag corpus_tag;
  std::size_t count;
};

struct Timeline {
  std::vector<TimelineRecord> records;  // sorted by (country, pub_date, doc_id)
  std::vector<MonthlyCount> monthly;    // sorted by (country, month, tag)

  std::size_t count(CorpusTag tag) const;
};

// One record per positive prediction (all predictions when
// include_negatives). Country and date come from the corpus. Throws
// kDataError for a prediction whose doc_id is not in the corpus.
Timeline build_timeline(std::span<const Prediction> predictions, const Corpus& corpus,
                        std::span<const MassKillingEvent> events,
                        int window_days = kDefaultWindowDays, bool include_negatives = false);

std::string timeline_to_csv(const Timeline& timeline);
std::string monthly_counts_to_csv(const Timeline& timeline);

struct TokenDelta {
  std::string token;
  double contribution_a = 0.0;  // model weight x vector entry in run A
  double contribution_b = 0.0;
  double delta = 0.0;           // contribution_a - contribution_b
  double idf_a = 0.0;           // 0 when the token is outside that vocabulary
  double idf_b = 0.0;
};

struct Discrepancy {
  std::string doc_id;
  std::string country;
  Label label_a;
  Label label_b;
  double decision_value_a;
  double decision_value_b;
  std::vector<TokenDelta> top_deltas;  // by |delta| descending
};

struct DiscrepancyReport {
  std::string corpus_a;
  std::string corpus_b;
  std::string mode;
  std::size_t shared_articles = 0;
  std::vector<Discrepancy> pairs;  // sorted by doc_id
  std::map<std::string, std::size_t> per_country;

  bool empty() const { return pairs.empty(); }
  std::string to_json() const;
};

// Joins two runs on doc_id and lists the articles whose labels differ, with
// the `top_tokens` largest per-token contribution differences. Throws
// kDataError when the runs share no doc_id.
DiscrepancyReport find_discrepancies(const ClassificationRun& run_a,
                                     const ClassificationRun& run_b, int top_tokens = 10);

struct IdfDelta {
  std::string token;
  double idf_a;
  double idf_b;
  double delta;  // idf_a - idf_b
};

struct WeightDivergence {
  std::vector<IdfDelta> tokens;  // by |delta| descending, ties by token

  std::string to_json() const;
};

// Tokens present in both vocabularies, top_k by |idf_a - idf_b|.
WeightDivergence weight_divergence(const Vocabulary& vocab_a, const Vocabulary& vocab_b,
                                   int top_k = 20);

}  // namespace trigviz

#endif  // TRIGVIZ_VALIDATE_H_
