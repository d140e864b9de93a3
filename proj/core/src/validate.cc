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

#include "trigviz/validate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>
#include <unordered_map>

#include "canonical_json.h"
#include "trigviz/csv.h"
#include "trigviz/error.h"

namespace trigviz {

std::string_view corpus_tag_name(CorpusTag tag) {
  return tag == CorpusTag::kDependentSpace ? "dependent_space" : "null_space";
}

std::size_t Timeline::count(CorpusTag tag) const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [tag](const TimelineRecord& r) { return r.corpus_tag == tag; }));
}

Timeline build_timeline(std::span<const Prediction> predictions, const Corpus& corpus,
                        std::span<const MassKillingEvent> events, int window_days,
                        bool include_negatives) {
  if (window_days <= 0) throw Error(ErrorKind::kInvalidArgument, "window_days must be positive");
  Timeline timeline;
  for (const Prediction& p : predictions) {
    if (p.label != Label::kPositive && !include_negatives) continue;
    const auto pos = corpus.find(p.doc_id);
    if (!pos) {
      throw Error(ErrorKind::kDataError, "prediction for unknown doc_id '" + p.doc_id + "'");
    }
    const Article& article = corpus[*pos];
    TimelineRecord record;
    record.country = article.country_label;
    record.pub_date = article.pub_date;
    record.doc_id = article.doc_id;
    record.label = p.label;
    record.in_window = in_event_window(article, events, window_days);
    record.corpus_tag = record.in_window ? CorpusTag::kDependentSpace : CorpusTag::kNullSpace;
    timeline.records.push_back(std::move(record));
  }
  std::sort(timeline.records.begin(), timeline.records.end(),
            [](const TimelineRecord& a, const TimelineRecord& b) {
              return std::tie(a.country, a.pub_date, a.doc_id) <
                     std::tie(b.country, b.pub_date, b.doc_id);
            });

  std::map<std::tuple<std::string, std::string, CorpusTag>, std::size_t> buckets;
  for (const TimelineRecord& r : timeline.records) {
    ++buckets[{r.country, format_year_month(r.pub_date), r.corpus_tag}];
  }
  for (const auto& [key, count] : buckets) {
    timeline.monthly.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  }
  return timeline;
}

std::string timeline_to_csv(const Timeline& timeline) {
  csv::Writer writer({"country", "pub_date", "doc_id", "label", "in_window", "corpus_tag"});
  for (const TimelineRecord& r : timeline.records) {
    writer.add_row({r.country, format_iso_date(r.pub_date), r.doc_id,
                    std::string(label_name(r.label)), r.in_window ? "true" : "false",
                    std::string(corpus_tag_name(r.corpus_tag))});
  }
  return writer.str();
}

std::string monthly_counts_to_csv(const Timeline& timeline) {
  csv::Writer writer({"country", "month", "corpus_tag", "count"});
  for (const MonthlyCount& m : timeline.monthly) {
    writer.add_row(
        {m.country, m.month, std::string(corpus_tag_name(m.corpus_tag)), std::to_string(m.count)});
  }
  return writer.str();
}

namespace {

bool by_magnitude(double a, double b, const std::string& ta, const std::string& tb) {
  const double ma = std::fabs(a), mb = std::fabs(b);
  return ma != mb ? ma > mb : ta < tb;
}

std::map<std::string, double> contributions(const ClassificationRun& run, std::size_t row) {
  std::map<std::string, double> out;
  for (const auto& [index, value] : run.vectors[row].entries) {
    const double w = index < run.model.weights.size() ? run.model.weights[index] : 0.0;
    out[run.vocab[index].token] = w * value;
  }
  return out;
}

double idf_or_zero(const Vocabulary& vocab, const std::string& token) {
  const auto index = vocab.index_of(token);
  return index ? vocab[*index].idf : 0.0;
}

}  // namespace

DiscrepancyReport find_discrepancies(const ClassificationRun& run_a,
                                     const ClassificationRun& run_b, int top_tokens) {
  if (top_tokens < 0) throw Error(ErrorKind::kInvalidArgument, "top_tokens must be >= 0");
  for (const ClassificationRun* run : {&run_a, &run_b}) {
    if (run->vectors.size() != run->predictions.size()) {
      throw Error(ErrorKind::kInvalidArgument, "run '" + run->corpus_name +
                                                   "' has vectors and predictions of "
                                                   "different lengths");
    }
  }
  std::unordered_map<std::string, std::size_t> in_b;
  for (std::size_t i = 0; i < run_b.predictions.size(); ++i) {
    in_b.emplace(run_b.predictions[i].doc_id, i);
  }

  DiscrepancyReport report;
  report.corpus_a = run_a.corpus_name;
  report.corpus_b = run_b.corpus_name;
  report.mode = run_a.mode == run_b.mode ? std::string(vocab_mode_name(run_a.mode)) : "mixed";
  for (std::size_t i = 0; i < run_a.predictions.size(); ++i) {
    const Prediction& pa = run_a.predictions[i];
    const auto it = in_b.find(pa.doc_id);
    if (it == in_b.end()) continue;
    ++report.shared_articles;
    const Prediction& pb = run_b.predictions[it->second];
    if (pa.label == pb.label) continue;

    Discrepancy d{pa.doc_id, pa.country_label, pa.label, pb.label,
                  pa.decision_value, pb.decision_value, {}};
    const auto ca = contributions(run_a, i);
    const auto cb = contributions(run_b, it->second);
    std::map<std::string, TokenDelta> merged;
    for (const auto& [token, c] : ca) merged[token].contribution_a = c;
    for (const auto& [token, c] : cb) merged[token].contribution_b = c;
    for (auto& [token, delta] : merged) {
      delta.token = token;
      delta.delta = delta.contribution_a - delta.contribution_b;
      delta.idf_a = idf_or_zero(run_a.vocab, token);
      delta.idf_b = idf_or_zero(run_b.vocab, token);
      d.top_deltas.push_back(delta);
    }
    std::sort(d.top_deltas.begin(), d.top_deltas.end(), [](const TokenDelta& a, const TokenDelta& b) {
      return by_magnitude(a.delta, b.delta, a.token, b.token);
    });
    if (d.top_deltas.size() > static_cast<std::size_t>(top_tokens)) {
      d.top_deltas.resize(static_cast<std::size_t>(top_tokens));
    }
    ++report.per_country[d.country];
    report.pairs.push_back(std::move(d));
  }
  if (report.shared_articles == 0) {
    throw Error(ErrorKind::kDataError, "corpora '" + run_a.corpus_name + "' and '" +
                                           run_b.corpus_name + "' share no doc_id");
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const Discrepancy& a, const Discrepancy& b) { return a.doc_id < b.doc_id; });
  return report;
}

std::string DiscrepancyReport::to_json() const {
  nlohmann::json pairs_json = nlohmann::json::array();
  for (const Discrepancy& d : pairs) {
    nlohmann::json deltas = nlohmann::json::array();
    for (const TokenDelta& t : d.top_deltas) {
      deltas.push_back({{"token", t.token},
                        {"contribution_a", t.contribution_a},
                        {"contribution_b", t.contribution_b},
                        {"delta", t.delta},
                        {"idf_a", t.idf_a},
                        {"idf_b", t.idf_b}});
    }
    pairs_json.push_back({{"doc_id", d.doc_id},
                          {"country", d.country},
                          {"label_a", label_name(d.label_a)},
                          {"label_b", label_name(d.label_b)},
                          {"decision_value_a", d.decision_value_a},
                          {"decision_value_b", d.decision_value_b},
                          {"top_deltas", std::move(deltas)}});
  }
  nlohmann::json per_country_json = nlohmann::json::object();
  for (const auto& [country, count] : per_country) per_country_json[country] = count;
  return canonical_dump({{"corpus_a", corpus_a},
                         {"corpus_b", corpus_b},
                         {"mode", mode},
                         {"shared_articles", shared_articles},
                         {"discrepancy_count", pairs.size()},
                         {"per_country", std::move(per_country_json)},
                         {"pairs", std::move(pairs_json)}},
                        12);
}

WeightDivergence weight_divergence(const Vocabulary& vocab_a, const Vocabulary& vocab_b,
                                   int top_k) {
  if (top_k < 0) throw Error(ErrorKind::kInvalidArgument, "top_k must be >= 0");
  WeightDivergence out;
  for (const Vocabulary::Entry& e : vocab_a.entries()) {
    const auto index = vocab_b.index_of(e.token);
    if (!index) continue;
    const double idf_b = vocab_b[*index].idf;
    out.tokens.push_back({e.token, e.idf, idf_b, e.idf - idf_b});
  }
  std::sort(out.tokens.begin(), out.tokens.end(), [](const IdfDelta& a, const IdfDelta& b) {
    return by_magnitude(a.delta, b.delta, a.token, b.token);
  });
  if (out.tokens.size() > static_cast<std::size_t>(top_k)) {
    out.tokens.resize(static_cast<std::size_t>(top_k));
  }
  return out;
}

std::string WeightDivergence::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const IdfDelta& t : tokens) {
    list.push_back({{"token", t.token}, {"idf_a", t.idf_a}, {"idf_b", t.idf_b}, {"delta", t.delta}});
  }
  return canonical_dump({{"tokens", std::move(list)}}, 12);
}

}  // namespace trigviz
