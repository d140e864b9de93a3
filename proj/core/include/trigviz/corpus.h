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

#ifndef TRIGVIZ_CORPUS_H_
#define TRIGVIZ_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trigviz/date.h"

namespace trigviz {

enum class Label { kNegative, kPositive };

std::string_view label_name(Label label);  // "positive" / "negative"

// Accepts positive/negative, 1/0, true/false, yes/no (case-insensitive).
std::optional<Label> parse_label(std::string_view text);

struct Article {
  std::string doc_id;
  std::string text;
  Date pub_date;
  std::string country_label;
  std::optional<std::string> source;

  friend bool operator==(const Article&, const Article&) = default;
};

struct LabeledArticle {
  Article article;
  Label label;
};

// Ordered, duplicate-free article collection. Articles are kept sorted by
// (pub_date, doc_id) and the date range tracks the extremes.
class Corpus {
 public:
  Corpus() = default;
  // Throws kDuplicateId if two articles share a doc_id.
  Corpus(std::string name, std::vector<Article> articles);

  const std::string& name() const { return name_; }
  std::span<const Article> articles() const { return articles_; }
  std::size_t size() const { return articles_.size(); }
  bool empty() const { return articles_.empty(); }
  const Article& operator[](std::size_t i) const { return articles_[i]; }

  // Unset for an empty corpus.
  const std::optional<std::pair<Date, Date>>& date_range() const { return date_range_; }

  // Position of `doc_id`, or nullopt.
  std::optional<std::size_t> find(std::string_view doc_id) const;

 private:
  std::string name_;
  std::vector<Article> articles_;
  std::optional<std::pair<Date, Date>> date_range_;
};

struct MassKillingEvent {
  std::string country;
  Date onset_date;
};

// Column names for CSV ingestion. Empty label/source names mean "absent".
struct CsvSchema {
  std::string text = "text";
  std::string date = "date";
  std::string doc_id = "doc_id";
  std::string country = "country";
  std::string label;
  std::string source;
  std::string date_format = "%Y-%m-%d";
};

struct RejectedRow {
  std::size_t row_number;  // 1-based data row (header excluded)
  std::string reason;
};

struct LoadResult {
  Corpus corpus;
  std::vector<RejectedRow> rejects;
  std::vector<std::string> warnings;
  std::map<std::string, Label> labels;  // filled only when schema.label is set
};

// Reads a CSV corpus. Unparseable dates go to `rejects`; a missing file,
// missing mandatory column or duplicate doc_id throws.
LoadResult load_corpus(const std::filesystem::path& path, const CsvSchema& schema,
                       std::string name = {});
LoadResult parse_corpus(std::string_view csv_text, const CsvSchema& schema,
                        std::string name = {});

// Canonical CSV with columns doc_id,text,pub_date,country_label,source and,
// when labels are given, a trailing label column.
std::string corpus_to_csv(const Corpus& corpus,
                          const std::map<std::string, Label>* labels = nullptr);

// The schema matching corpus_to_csv output.
CsvSchema canonical_schema(bool with_labels);

std::string rejects_to_csv(std::span<const RejectedRow> rejects);

std::vector<LabeledArticle> attach_labels(const Corpus& corpus,
                                          const std::map<std::string, Label>& labels);

std::vector<MassKillingEvent> load_events(const std::filesystem::path& path);
std::vector<MassKillingEvent> parse_events(std::string_view csv_text);
std::string events_to_csv(std::span<const MassKillingEvent> events);

inline constexpr int kDefaultWindowDays = 730;

// True when pub_date lies in [onset - window_days, onset) of some event for
// the article's country.
bool in_event_window(const Article& article, std::span<const MassKillingEvent> events,
                     int window_days);

// Dependent-space carve-out: the articles inside any pre-onset window.
Corpus window_filter(const Corpus& corpus, std::span<const MassKillingEvent> events,
                     int window_days = kDefaultWindowDays, std::string name = {});

// Vocabulary for generated text.
struct SynthCountry {
  std::string name;   // country label, e.g. "South Africa"
  std::string alias;  // lowercase mention, e.g. "south africa"
};

struct Lexicons {
  std::vector<std::string> trigger;
  std::vector<std::string> filler;
  std::vector<SynthCountry> countries;
};

struct SynthParams {
  uint64_t seed = 42;
  int n_articles = 200;
  double pos_fraction = 0.5;
  double digest_fraction = 0.1;
  std::string name = "synthetic";
  std::string id_prefix = "SYN";
  int first_year = 1989;
  int last_year = 2017;
};

// Generated corpus plus ground truth aligned with corpus.articles().
struct SynthCorpus {
  Corpus corpus;
  std::vector<Label> labels;
  std::vector<bool> digest;

  std::map<std::string, Label> label_map() const;
};

// Deterministic in (params, lexicons). Exactly round(n * pos_fraction)
// positives and round(n * digest_fraction) digests. Digests mention many
// countries and distinct years and are at least 3x the median ordinary length.
SynthCorpus synth_corpus(const SynthParams& params, const Lexicons& lexicons);

// One onset per sampled country, dated inside the study period so that the
// preceding window overlaps it.
std::vector<MassKillingEvent> synth_events(uint64_t seed, std::span<const SynthCountry> countries,
                                           int n_countries, int first_year = 1991,
                                           int last_year = 2017);

}  // namespace trigviz

#endif  // TRIGVIZ_CORPUS_H_
