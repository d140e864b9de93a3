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

#include "trigviz/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_set>

#include "io.h"
#include "trigviz/csv.h"
#include "trigviz/error.h"
#include "trigviz/preprocess.h"
#include "trigviz/random.h"

namespace trigviz {

std::string_view label_name(Label label) {
  return label == Label::kPositive ? "positive" : "negative";
}

std::optional<Label> parse_label(std::string_view text) {
  std::string lower;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (lower == "positive" || lower == "1" || lower == "true" || lower == "yes" || lower == "pos") {
    return Label::kPositive;
  }
  if (lower == "negative" || lower == "0" || lower == "false" || lower == "no" || lower == "neg") {
    return Label::kNegative;
  }
  return std::nullopt;
}

Corpus::Corpus(std::string name, std::vector<Article> articles)
    : name_(std::move(name)), articles_(std::move(articles)) {
  std::sort(articles_.begin(), articles_.end(), [](const Article& a, const Article& b) {
    if (a.pub_date != b.pub_date) return a.pub_date < b.pub_date;
    return a.doc_id < b.doc_id;
  });
  std::unordered_set<std::string_view> seen;
  for (const Article& article : articles_) {
    if (!seen.insert(article.doc_id).second) {
      throw Error(ErrorKind::kDuplicateId, "duplicate doc_id \"" + article.doc_id + "\"");
    }
  }
  if (!articles_.empty()) {
    date_range_ = std::make_pair(articles_.front().pub_date, articles_.back().pub_date);
  }
}

std::optional<std::size_t> Corpus::find(std::string_view doc_id) const {
  for (std::size_t i = 0; i < articles_.size(); ++i) {
    if (articles_[i].doc_id == doc_id) return i;
  }
  return std::nullopt;
}

LoadResult parse_corpus(std::string_view csv_text, const CsvSchema& schema, std::string name) {
  const csv::Table table = csv::parse(csv_text);

  auto require = [&](const std::string& column, std::string_view role) {
    const int index = table.column(column);
    if (index < 0) {
      throw Error(ErrorKind::kNotFound,
                  "missing mandatory column \"" + column + "\" (" + std::string(role) + ")");
    }
    return static_cast<std::size_t>(index);
  };
  const std::size_t text_col = require(schema.text, "text");
  const std::size_t date_col = require(schema.date, "date");
  const std::size_t id_col = require(schema.doc_id, "doc id");
  const std::size_t country_col = require(schema.country, "country");
  const int label_col = schema.label.empty() ? -1 : table.column(schema.label);
  const int source_col = schema.source.empty() ? -1 : table.column(schema.source);

  LoadResult result;
  if (!schema.label.empty() && label_col < 0) {
    result.warnings.push_back("label column \"" + schema.label + "\" not present; no labels read");
  }

  std::vector<Article> articles;
  articles.reserve(table.rows.size());
  std::set<std::string> ids;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t row_number = r + 1;
    if (row.size() != table.header.size()) {
      result.rejects.push_back({row_number, "expected " + std::to_string(table.header.size()) +
                                                " fields, got " + std::to_string(row.size())});
      continue;
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c].size() > csv::kSpreadsheetCellLimit) {
        result.warnings.push_back("row " + std::to_string(row_number) + " column \"" +
                                  table.header[c] + "\" has " + std::to_string(row[c].size()) +
                                  " characters (spreadsheet tools truncate cells beyond " +
                                  std::to_string(csv::kSpreadsheetCellLimit) + ")");
      }
    }
    const std::string& doc_id = row[id_col];
    if (doc_id.empty()) {
      result.rejects.push_back({row_number, "empty doc_id"});
      continue;
    }
    if (!ids.insert(doc_id).second) {
      throw Error(ErrorKind::kDuplicateId, "duplicate doc_id \"" + doc_id + "\" at row " +
                                               std::to_string(row_number));
    }
    const auto date = parse_date(row[date_col], schema.date_format);
    if (!date) {
      result.rejects.push_back({row_number, "unparseable date \"" + row[date_col] + "\""});
      continue;
    }
    if (label_col >= 0) {
      const auto label = parse_label(row[static_cast<std::size_t>(label_col)]);
      if (!label) {
        result.rejects.push_back(
            {row_number, "unparseable label \"" + row[static_cast<std::size_t>(label_col)] + "\""});
        continue;
      }
      result.labels.emplace(doc_id, *label);
    }
    Article article{doc_id, row[text_col], *date, row[country_col], std::nullopt};
    if (source_col >= 0 && !row[static_cast<std::size_t>(source_col)].empty()) {
      article.source = row[static_cast<std::size_t>(source_col)];
    }
    articles.push_back(std::move(article));
  }
  result.corpus = Corpus(std::move(name), std::move(articles));
  return result;
}

LoadResult load_corpus(const std::filesystem::path& path, const CsvSchema& schema,
                       std::string name) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorKind::kNotFound, "corpus file not found: " + path.string());
  }
  if (name.empty()) name = path.stem().string();
  return parse_corpus(io::read_file(path), schema, std::move(name));
}

CsvSchema canonical_schema(bool with_labels) {
  CsvSchema schema;
  schema.text = "text";
  schema.date = "pub_date";
  schema.doc_id = "doc_id";
  schema.country = "country_label";
  schema.source = "source";
  schema.label = with_labels ? "label" : "";
  return schema;
}

std::string corpus_to_csv(const Corpus& corpus, const std::map<std::string, Label>* labels) {
  std::vector<std::string> header{"doc_id", "text", "pub_date", "country_label", "source"};
  if (labels) header.push_back("label");
  csv::Writer writer(header);
  for (const Article& a : corpus.articles()) {
    std::vector<std::string> row{a.doc_id, a.text, format_iso_date(a.pub_date), a.country_label,
                                 a.source.value_or("")};
    if (labels) {
      auto it = labels->find(a.doc_id);
      if (it == labels->end()) {
        throw Error(ErrorKind::kInvalidArgument, "no label for doc_id \"" + a.doc_id + "\"");
      }
      row.emplace_back(label_name(it->second));
    }
    writer.add_row(row);
  }
  return writer.str();
}

std::string rejects_to_csv(std::span<const RejectedRow> rejects) {
  csv::Writer writer({"row_number", "reason"});
  for (const RejectedRow& r : rejects) writer.add_row({std::to_string(r.row_number), r.reason});
  return writer.str();
}

std::vector<LabeledArticle> attach_labels(const Corpus& corpus,
                                          const std::map<std::string, Label>& labels) {
  std::vector<LabeledArticle> out;
  out.reserve(corpus.size());
  for (const Article& a : corpus.articles()) {
    auto it = labels.find(a.doc_id);
    if (it == labels.end()) {
      throw Error(ErrorKind::kDataError, "training row \"" + a.doc_id + "\" has no label");
    }
    out.push_back({a, it->second});
  }
  return out;
}

std::vector<MassKillingEvent> parse_events(std::string_view csv_text) {
  const csv::Table table = csv::parse(csv_text);
  const int country_col = table.column("country");
  const int date_col = table.column("onset_date");
  if (country_col < 0 || date_col < 0) {
    throw Error(ErrorKind::kNotFound, "events file needs columns country,onset_date");
  }
  std::vector<MassKillingEvent> events;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size()) {
      throw Error(ErrorKind::kDataError, "events row " + std::to_string(r + 1) + " malformed");
    }
    const auto date = parse_iso_date(row[static_cast<std::size_t>(date_col)]);
    if (!date) {
      throw Error(ErrorKind::kDataError, "events row " + std::to_string(r + 1) +
                                             ": unparseable onset_date \"" +
                                             row[static_cast<std::size_t>(date_col)] + "\"");
    }
    events.push_back({row[static_cast<std::size_t>(country_col)], *date});
  }
  return events;
}

std::vector<MassKillingEvent> load_events(const std::filesystem::path& path) {
  return parse_events(io::read_file(path));
}

std::string events_to_csv(std::span<const MassKillingEvent> events) {
  csv::Writer writer({"country", "onset_date"});
  for (const auto& e : events) writer.add_row({e.country, format_iso_date(e.onset_date)});
  return writer.str();
}

bool in_event_window(const Article& article, std::span<const MassKillingEvent> events,
                     int window_days) {
  for (const MassKillingEvent& event : events) {
    if (event.country != article.country_label) continue;
    if (article.pub_date >= add_days(event.onset_date, -window_days) &&
        article.pub_date < event.onset_date) {
      return true;
    }
  }
  return false;
}

Corpus window_filter(const Corpus& corpus, std::span<const MassKillingEvent> events,
                     int window_days, std::string name) {
  if (events.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "window_filter needs at least one event");
  }
  if (window_days <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "window_days must be positive");
  }
  std::vector<Article> kept;
  for (const Article& article : corpus.articles()) {
    if (in_event_window(article, events, window_days)) kept.push_back(article);
  }
  if (name.empty()) name = corpus.name() + "-window";
  return Corpus(std::move(name), std::move(kept));
}

// ---------------------------------------------------------------------------
// Synthetic corpora

namespace {

constexpr std::string_view kGlue[] = {"the", "of", "in", "and", "a", "to", "was", "on", "for",
                                      "with", "by", "from", "at", "that", "it", "as"};

Date random_date(Rng& rng, int first_year, int last_year) {
  const Date lo{std::chrono::year{first_year}, std::chrono::January, std::chrono::day{1}};
  const Date hi{std::chrono::year{last_year}, std::chrono::December, std::chrono::day{31}};
  const long span = days_since_epoch(hi) - days_since_epoch(lo);
  return add_days(lo, static_cast<int>(rng.between(0, span)));
}

class TextBuilder {
 public:
  TextBuilder(Rng& rng, const Lexicons& lex) : rng_(rng), lex_(lex) {}

  void filler() {
    // Squared uniform skews toward the head of the list, giving a Zipf-like
    // spread of frequencies.
    const double u = rng_.uniform();
    const auto idx = static_cast<std::size_t>(u * u * static_cast<double>(lex_.filler.size()));
    word(lex_.filler[std::min(idx, lex_.filler.size() - 1)]);
  }
  void trigger() { word(lex_.trigger[rng_.below(lex_.trigger.size())]); }
  void glue() { word(kGlue[rng_.below(std::size(kGlue))]); }

  void word(std::string_view w) {
    if (sentence_len_ == 0) {
      if (!text_.empty()) text_ += ". ";
      std::string cap(w);
      cap[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(cap[0])));
      text_ += cap;
      sentence_target_ = static_cast<int>(rng_.between(10, 20));
    } else {
      text_ += ' ';
      text_ += w;
    }
    if (++sentence_len_ >= sentence_target_) sentence_len_ = 0;
  }

  void country(const SynthCountry& c) {
    // Proper nouns keep their capitalisation in the raw text.
    std::string title = c.alias;
    bool start = true;
    for (char& ch : title) {
      if (start && std::isalpha(static_cast<unsigned char>(ch))) {
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      }
      start = ch == ' ';
    }
    word(title);
  }

  // Body of `length` slots: each is a trigger word with probability
  // trigger_rate, a country mention with probability country_rate, a glue
  // word with probability 0.25, filler otherwise.
  void body(int length, double trigger_rate, double country_rate, const SynthCountry& home) {
    for (int i = 0; i < length; ++i) {
      const double u = rng_.uniform();
      if (u < trigger_rate) {
        trigger();
      } else if (u < trigger_rate + country_rate) {
        country(home);
      } else if (u < trigger_rate + country_rate + 0.25) {
        glue();
      } else {
        filler();
      }
    }
  }

  std::string finish() {
    std::string out = std::move(text_);
    if (!out.empty()) out += '.';
    text_.clear();
    sentence_len_ = 0;
    return out;
  }

 private:
  Rng& rng_;
  const Lexicons& lex_;
  std::string text_;
  int sentence_len_ = 0;
  int sentence_target_ = 15;
};

}  // namespace

std::map<std::string, Label> SynthCorpus::label_map() const {
  std::map<std::string, Label> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) out.emplace(corpus[i].doc_id, labels[i]);
  return out;
}

SynthCorpus synth_corpus(const SynthParams& params, const Lexicons& lexicons) {
  if (params.n_articles <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "synth_corpus needs n_articles > 0");
  }
  if (!(params.pos_fraction >= 0.0 && params.pos_fraction <= 1.0) ||
      !(params.digest_fraction >= 0.0 && params.digest_fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "synth_corpus fractions must lie in [0, 1]");
  }
  if (lexicons.trigger.empty() || lexicons.filler.empty() || lexicons.countries.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "synth_corpus needs trigger and filler words and at least two countries");
  }
  if (params.first_year > params.last_year) {
    throw Error(ErrorKind::kInvalidArgument, "synth_corpus year range is empty");
  }

  const auto n = static_cast<std::size_t>(params.n_articles);
  const auto n_pos = static_cast<std::size_t>(std::llround(params.n_articles * params.pos_fraction));
  const auto n_digest =
      static_cast<std::size_t>(std::llround(params.n_articles * params.digest_fraction));

  Rng rng(params.seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<Label> labels(n, Label::kNegative);
  rng.shuffle(std::span<std::size_t>(order));
  for (std::size_t i = 0; i < n_pos; ++i) labels[order[i]] = Label::kPositive;
  std::vector<bool> digest(n, false);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  for (std::size_t i = 0; i < n_digest; ++i) digest[order[i]] = true;

  std::vector<Article> articles(n);
  std::vector<std::size_t> home(n);
  TextBuilder builder(rng, lexicons);
  const std::size_t n_countries = lexicons.countries.size();

  // Ordinary articles first, so digests can be sized against their median.
  std::vector<std::size_t> ordinary_counts;
  for (std::size_t i = 0; i < n; ++i) {
    char id[64];
    std::snprintf(id, sizeof(id), "%s-%06zu", params.id_prefix.c_str(), i + 1);
    articles[i].doc_id = id;
    articles[i].pub_date = random_date(rng, params.first_year, params.last_year);
    home[i] = rng.below(n_countries);
    articles[i].country_label = lexicons.countries[home[i]].name;
    if (digest[i]) continue;

    const SynthCountry& country = lexicons.countries[home[i]];
    const int length = static_cast<int>(rng.between(80, 220));
    const bool positive = labels[i] == Label::kPositive;
    const double trigger_rate = positive ? rng.uniform(0.15, 0.35) : 0.01;
    builder.country(country);
    builder.body(length, trigger_rate, 0.015, country);
    if (rng.uniform() < 0.3) {
      const std::size_t other = (home[i] + 1 + rng.below(n_countries - 1)) % n_countries;
      builder.word("near");
      builder.country(lexicons.countries[other]);
    }
    const int n_years = static_cast<int>(rng.between(0, 2));
    const int year = static_cast<int>(articles[i].pub_date.year());
    for (int y = 0; y < n_years; ++y) {
      builder.glue();
      builder.word(std::to_string(year - static_cast<int>(rng.between(0, 3))));
    }
    articles[i].text = builder.finish();
    ordinary_counts.push_back(normalize(articles[i].text).word_count());
  }

  std::size_t median = 0;
  if (!ordinary_counts.empty()) {
    std::sort(ordinary_counts.begin(), ordinary_counts.end());
    median = ordinary_counts[ordinary_counts.size() / 2];
  }

  const int year_span = params.last_year - params.first_year + 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (!digest[i]) continue;
    const bool positive = labels[i] == Label::kPositive;
    std::vector<std::size_t> picks(n_countries);
    for (std::size_t c = 0; c < n_countries; ++c) picks[c] = c;
    rng.shuffle(std::span<std::size_t>(picks));
    std::vector<int> years(static_cast<std::size_t>(year_span));
    for (int y = 0; y < year_span; ++y) years[static_cast<std::size_t>(y)] = params.first_year + y;
    rng.shuffle(std::span<int>(years));

    const std::size_t sections =
        std::min<std::size_t>(n_countries, static_cast<std::size_t>(rng.between(8, 14)));
    // The labelled country is always one of the sections.
    picks.erase(std::find(picks.begin(), picks.end(), home[i]));
    picks.insert(picks.begin(), home[i]);

    std::size_t s = 0;
    std::size_t words = 0;
    std::string text;
    while (s < sections || words < 3 * median + 1) {
      const SynthCountry& country = lexicons.countries[picks[s % n_countries]];
      builder.word("in");
      builder.country(country);
      builder.word(std::to_string(years[s % years.size()]));
      builder.body(static_cast<int>(rng.between(40, 70)), positive ? 0.12 : 0.01, 0.0, country);
      text = builder.finish();
      words += normalize(text).word_count();
      articles[i].text += (articles[i].text.empty() ? "" : " ") + text;
      ++s;
    }
  }

  SynthCorpus out;
  std::map<std::string, std::pair<Label, bool>> truth;
  for (std::size_t i = 0; i < n; ++i) truth[articles[i].doc_id] = {labels[i], digest[i]};
  out.corpus = Corpus(params.name, std::move(articles));
  for (const Article& a : out.corpus.articles()) {
    out.labels.push_back(truth[a.doc_id].first);
    out.digest.push_back(truth[a.doc_id].second);
  }
  return out;
}

std::vector<MassKillingEvent> synth_events(uint64_t seed, std::span<const SynthCountry> countries,
                                           int n_countries, int first_year, int last_year) {
  if (n_countries <= 0 || static_cast<std::size_t>(n_countries) > countries.size()) {
    throw Error(ErrorKind::kInvalidArgument, "synth_events country count out of range");
  }
  Rng rng(seed);
  std::vector<std::size_t> picks(countries.size());
  for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
  rng.shuffle(std::span<std::size_t>(picks));
  std::vector<MassKillingEvent> events;
  for (int i = 0; i < n_countries; ++i) {
    events.push_back({countries[picks[static_cast<std::size_t>(i)]].name,
                      random_date(rng, first_year, last_year)});
  }
  std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
    return std::tie(a.country, a.onset_date) < std::tie(b.country, b.onset_date);
  });
  return events;
}

}  // namespace trigviz
