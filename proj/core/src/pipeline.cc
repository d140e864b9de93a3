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

#include "trigviz/pipeline.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <map>
#include <ostream>
#include <set>

#include "canonical_json.h"
#include "io.h"
#include "trigviz/builtin_data.h"
#include "trigviz/classify.h"
#include "trigviz/corpus.h"
#include "trigviz/csv.h"
#include "trigviz/emit.h"
#include "trigviz/features.h"
#include "trigviz/hash.h"
#include "trigviz/preprocess.h"
#include "trigviz/project.h"
#include "trigviz/screening.h"
#include "trigviz/validate.h"

#ifndef TRIGVIZ_VERSION
#define TRIGVIZ_VERSION "0.0.0"
#endif

namespace trigviz {

namespace fs = std::filesystem;

std::string_view version() { return TRIGVIZ_VERSION; }

// ---------------------------------------------------------------------------
// Configuration registry

namespace {

using C = RunConfig;

const ConfigField kFields[] = {
    {"output_dir", "run directory for every stage", &C::output_dir},
    {"paths.train", "labeled training corpus CSV (read by ingest)", &C::train_path},
    {"paths.corpus", "unlabeled classification corpus CSV (read by ingest)", &C::corpus_path},
    {"paths.events", "event onsets CSV with country,onset_date (read by ingest)", &C::events_path},
    {"paths.gazetteer", "country alias CSV; empty for the builtin list", &C::gazetteer_path},
    {"paths.stopwords", "stopword list; empty for the builtin list", &C::stopwords_path},
    {"paths.trigger_lexicon", "synthetic trigger words; empty for builtin", &C::trigger_lexicon_path},
    {"paths.filler_lexicon", "synthetic filler words; empty for builtin", &C::filler_lexicon_path},
    {"schema.text", "text column name", &C::schema_text},
    {"schema.date", "publication date column name", &C::schema_date},
    {"schema.doc_id", "document id column name", &C::schema_doc_id},
    {"schema.country", "country label column name", &C::schema_country},
    {"schema.label", "label column name in the training corpus", &C::schema_label},
    {"schema.source", "optional source column name", &C::schema_source},
    {"schema.date_format", "date pattern using %Y %m %d", &C::schema_date_format},
    {"features.max_features", "vocabulary size bound", &C::max_features},
    {"features.stem", "apply the Porter stemmer", &C::stem},
    {"features.top_k", "tokens listed per class", &C::top_k},
    {"features.class_score", "per-class token score: mean, sum or max", &C::class_score},
    {"svm.lambda", "regularization strength", &C::svm_lambda},
    {"svm.epochs", "passes over the training set", &C::svm_epochs},
    {"svm.seed", "shuffle seed", &C::svm_seed},
    {"screening.threshold", "percentile rank that flags a digest, in (0, 1)", &C::screening_threshold},
    {"screening.conjunctive", "require all three ranks (false: any)", &C::screening_conjunctive},
    {"screening.exclude", "drop flagged digests before classification", &C::screening_exclude},
    {"projection.method", "umap or pca", &C::projection_method},
    {"projection.k", "neighbours in the fuzzy graph", &C::projection_k},
    {"projection.min_dist", "layout min_dist in [0, 3)", &C::projection_min_dist},
    {"projection.epochs", "layout epochs", &C::projection_epochs},
    {"projection.seed", "layout seed", &C::projection_seed},
    {"classify.vocab_mode", "shared (training vocabulary) or refit (per corpus)", &C::vocab_mode},
    {"validate.window_days", "days before an onset that count as the window", &C::window_days},
    {"histogram.bin_width", "word count histogram bin width", &C::histogram_bin_width},
    {"histogram.max_edge", "word count histogram upper edge", &C::histogram_max_edge},
    {"synth.seed", "synthetic corpus seed", &C::synth_seed},
    {"synth.n", "synthetic training articles", &C::synth_n},
    {"synth.corpus_n", "synthetic classification articles (0: 4 x synth.n)", &C::synth_corpus_n},
    {"synth.pos_fraction", "positive share of the training corpus", &C::synth_pos_fraction},
    {"synth.corpus_pos_fraction", "positive share of the classification corpus", &C::synth_corpus_pos_fraction},
    {"synth.digest_fraction", "digest share of both corpora", &C::synth_digest_fraction},
    {"synth.event_countries", "countries given an event onset", &C::synth_event_countries},
    {"charts.svg", "also render static SVG charts", &C::render_svg},
};

const ConfigField& find_field(std::string_view key) {
  for (const ConfigField& f : kFields) {
    if (f.key == key) return f;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown configuration key '" + std::string(key) + "'");
}

void flatten(const nlohmann::json& j, const std::string& prefix,
             std::vector<std::pair<std::string, const nlohmann::json*>>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.value().is_object()) {
      flatten(it.value(), key, out);
    } else {
      out.emplace_back(key, &it.value());
    }
  }
}

[[noreturn]] void bad_value(std::string_view key, std::string_view expected) {
  throw Error(ErrorKind::kInvalidArgument,
              "configuration key '" + std::string(key) + "' expects " + std::string(expected));
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::span<const ConfigField> config_fields() { return kFields; }

std::string flag_name(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '.', '-');
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

void apply_config_json(RunConfig& config, std::string_view json_text) {
  const nlohmann::json j = parse_json(json_text, "configuration");
  if (!j.is_object()) throw Error(ErrorKind::kInvalidArgument, "configuration must be a JSON object");
  std::vector<std::pair<std::string, const nlohmann::json*>> items;
  flatten(j, "", items);
  for (const auto& [key, value] : items) {
    const ConfigField& field = find_field(key);
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(config.*member)>;
          if constexpr (std::is_same_v<T, std::string>) {
            if (!value->is_string()) bad_value(key, "a string");
            config.*member = value->template get<std::string>();
          } else if constexpr (std::is_same_v<T, bool>) {
            if (!value->is_boolean()) bad_value(key, "a boolean");
            config.*member = value->template get<bool>();
          } else if constexpr (std::is_same_v<T, double>) {
            if (!value->is_number()) bad_value(key, "a number");
            config.*member = value->template get<double>();
          } else if constexpr (std::is_same_v<T, int>) {
            if (!value->is_number_integer()) bad_value(key, "an integer");
            const auto v = value->template get<int64_t>();
            if (v < INT32_MIN || v > INT32_MAX) bad_value(key, "a 32-bit integer");
            config.*member = static_cast<int>(v);
          } else {
            if (!value->is_number_unsigned()) bad_value(key, "a non-negative integer");
            config.*member = value->template get<uint64_t>();
          }
        },
        field.member);
  }
}

void apply_config_file(RunConfig& config, const fs::path& path) {
  apply_config_json(config, io::read_file(path));
}

void set_config_value(RunConfig& config, std::string_view key, std::string_view value) {
  const ConfigField& field = find_field(key);
  std::visit(
      [&](auto member) {
        using T = std::remove_reference_t<decltype(config.*member)>;
        if constexpr (std::is_same_v<T, std::string>) {
          config.*member = std::string(value);
        } else if constexpr (std::is_same_v<T, bool>) {
          if (value == "true" || value == "1" || value == "yes" || value == "on") {
            config.*member = true;
          } else if (value == "false" || value == "0" || value == "no" || value == "off") {
            config.*member = false;
          } else {
            bad_value(key, "true or false");
          }
        } else if constexpr (std::is_same_v<T, double>) {
          const std::string text(value);
          char* end = nullptr;
          const double v = std::strtod(text.c_str(), &end);
          if (text.empty() || end != text.c_str() + text.size()) bad_value(key, "a number");
          config.*member = v;
        } else {
          T v{};
          if (!parse_number(value, v)) {
            bad_value(key, std::is_same_v<T, int> ? "an integer" : "a non-negative integer");
          }
          config.*member = v;
        }
      },
      field.member);
}

namespace {

void require(bool ok, std::string_view key, std::string_view rule) {
  if (!ok) {
    throw Error(ErrorKind::kInvalidArgument,
                "configuration key '" + std::string(key) + "' " + std::string(rule));
  }
}

}  // namespace

void validate_config(const RunConfig& c) {
  require(!c.output_dir.empty(), "output_dir", "must not be empty");
  require(c.max_features >= 1, "features.max_features", "must be >= 1");
  require(c.top_k >= 1, "features.top_k", "must be >= 1");
  require(parse_class_score(c.class_score).has_value(), "features.class_score",
          "must be mean, sum or max");
  require(std::isfinite(c.svm_lambda) && c.svm_lambda > 0.0, "svm.lambda", "must be > 0");
  require(c.svm_epochs >= 1, "svm.epochs", "must be >= 1");
  require(c.screening_threshold > 0.0 && c.screening_threshold < 1.0, "screening.threshold",
          "must lie in (0, 1)");
  require(parse_projection_method(c.projection_method).has_value(), "projection.method",
          "must be umap or pca");
  require(c.projection_k >= 2, "projection.k", "must be >= 2");
  require(c.projection_min_dist >= 0.0 && c.projection_min_dist < 3.0, "projection.min_dist",
          "must lie in [0, 3)");
  require(c.projection_epochs >= 1, "projection.epochs", "must be >= 1");
  require(parse_vocab_mode(c.vocab_mode).has_value(), "classify.vocab_mode",
          "must be shared or refit");
  require(c.window_days >= 1, "validate.window_days", "must be >= 1");
  require(c.histogram_bin_width >= 1, "histogram.bin_width", "must be >= 1");
  require(c.histogram_max_edge >= c.histogram_bin_width, "histogram.max_edge",
          "must be >= histogram.bin_width");
  require(c.synth_n >= 10, "synth.n", "must be >= 10");
  require(c.synth_corpus_n >= 0, "synth.corpus_n", "must be >= 0");
  for (auto [key, v] : {std::pair{"synth.pos_fraction", c.synth_pos_fraction},
                        std::pair{"synth.corpus_pos_fraction", c.synth_corpus_pos_fraction},
                        std::pair{"synth.digest_fraction", c.synth_digest_fraction}}) {
    require(v >= 0.0 && v <= 1.0, key, "must lie in [0, 1]");
  }
  require(c.synth_pos_fraction > 0.0 && c.synth_pos_fraction < 1.0, "synth.pos_fraction",
          "must leave both classes non-empty");
  require(c.synth_event_countries >= 1, "synth.event_countries", "must be >= 1");
  require(!c.schema_text.empty() && !c.schema_date.empty() && !c.schema_doc_id.empty() &&
              !c.schema_country.empty(),
          "schema.*", "text, date, doc_id and country column names must not be empty");
  for (const ConfigField& f : kFields) {
    if (!f.key.starts_with("paths.")) continue;
    const std::string& path = c.*std::get<std::string RunConfig::*>(f.member);
    if (!path.empty() && !fs::is_regular_file(path)) {
      throw Error(ErrorKind::kNotFound,
                  "configuration key '" + std::string(f.key) + "': no such file '" + path + "'");
    }
  }
}

std::string config_to_json(const RunConfig& config) {
  nlohmann::json j = nlohmann::json::object();
  for (const ConfigField& f : kFields) {
    std::visit([&](auto member) { j[std::string(f.key)] = config.*member; }, f.member);
  }
  return canonical_dump(j, 12);
}

// ---------------------------------------------------------------------------
// Stages

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : {Stage::kIngest, Stage::kSynth, Stage::kProfile, Stage::kTrain, Stage::kClassify,
                  Stage::kProject, Stage::kTimeline, Stage::kDiff, Stage::kReport}) {
    if (stage_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "ingest";
    case Stage::kSynth: return "synth";
    case Stage::kProfile: return "profile";
    case Stage::kTrain: return "train";
    case Stage::kClassify: return "classify";
    case Stage::kProject: return "project";
    case Stage::kTimeline: return "timeline";
    case Stage::kDiff: return "diff";
    case Stage::kReport: return "report";
  }
  return "report";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return 2;
    case ErrorKind::kStageInputMissing: return 3;
    case ErrorKind::kNotFound: return 4;
    case ErrorKind::kDataError: return 5;
    case ErrorKind::kDuplicateId: return 6;
    case ErrorKind::kDegenerate: return 7;
    case ErrorKind::kFingerprintMismatch: return 8;
    case ErrorKind::kIo: return 9;
  }
  return 1;
}

namespace {

constexpr const char* kTrainCsv = "data/train.csv";
constexpr const char* kCorpusCsv = "data/corpus.csv";
constexpr const char* kEventsCsv = "data/events.csv";
constexpr const char* kProfilesCsv = "screening/profiles.csv";
constexpr const char* kVocabJson = "model/vocab.json";
constexpr const char* kModelJson = "model/model.json";
constexpr const char* kSelectName = "select_countries";
constexpr const char* kDependentName = "dependent_space";
constexpr const char* kFromData = "ingest` or `synth";

std::string predictions_file(std::string_view corpus) {
  return "classify/predictions-" + std::string(corpus) + ".csv";
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Tracks what a stage reads and writes so the manifest can list hashes.
class StageContext {
 public:
  StageContext(Stage stage, const RunConfig& config, std::ostream& log)
      : stage_(stage), config_(config), log_(log), root_(config.output_dir) {}

  const RunConfig& config() const { return config_; }
  std::ostream& log() { return log_; }
  const fs::path& root() const { return root_; }

  bool exists(const std::string& rel) const { return fs::is_regular_file(root_ / rel); }

  // Reads a run-directory artefact, naming the stage that produces it when
  // it is missing.
  std::string input(const std::string& rel, std::string_view producer) {
    const fs::path path = root_ / rel;
    if (!fs::is_regular_file(path)) {
      throw Error(ErrorKind::kStageInputMissing,
                  "stage `" + std::string(stage_name(stage_)) + "` needs " + rel + " (produced by `" +
                      std::string(producer) + "`); not found in " + root_.string());
    }
    std::string text = io::read_file(path);
    inputs_[rel] = sha256_hex(text);
    return text;
  }

  // Reads a file named by the configuration.
  std::string external(const std::string& path) {
    std::string text = io::read_file(path);
    inputs_[path] = sha256_hex(text);
    return text;
  }

  void output(const std::string& rel, std::string_view contents) {
    io::write_file(root_ / rel, contents);
    outputs_[rel] = sha256_hex(contents);
  }

  void chart(const ChartPayload& payload) {
    for (const fs::path& p : emit_chart(payload, root_ / "charts", config_.render_svg)) {
      outputs_[fs::relative(p, root_).generic_string()] = sha256_file(p);
    }
  }

  void write_manifest() {
    nlohmann::json inputs = nlohmann::json::object(), outputs = nlohmann::json::object();
    for (const auto& [k, v] : inputs_) inputs[k] = v;
    for (const auto& [k, v] : outputs_) outputs[k] = v;
    const nlohmann::json manifest = {
        {"stage", stage_name(stage_)},
        {"version", version()},
        {"created_at", utc_now()},
        {"config", nlohmann::json::parse(config_to_json(config_))},
        {"inputs", std::move(inputs)},
        {"outputs", std::move(outputs)}};
    io::write_file(root_ / "manifests" / (std::string(stage_name(stage_)) + ".json"),
                   canonical_dump(manifest, 12));
  }

 private:
  Stage stage_;
  const RunConfig& config_;
  std::ostream& log_;
  fs::path root_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
};

StopwordSet stopwords_for(StageContext& ctx) {
  const std::string& path = ctx.config().stopwords_path;
  return parse_stopwords(path.empty() ? std::string(builtin_stopwords()) : ctx.external(path));
}

Gazetteer gazetteer_for(StageContext& ctx) {
  const std::string& path = ctx.config().gazetteer_path;
  return parse_gazetteer(path.empty() ? std::string(builtin_gazetteer_csv()) : ctx.external(path));
}

TextPipeline text_pipeline(StageContext& ctx) {
  return TextPipeline{stopwords_for(ctx), RefineOptions{ctx.config().stem}};
}

SvmParams svm_params(const RunConfig& c) { return {c.svm_lambda, c.svm_epochs, c.svm_seed}; }

struct LabeledCorpus {
  Corpus corpus;
  std::vector<Label> labels;
};

LabeledCorpus load_training(StageContext& ctx) {
  LoadResult r = parse_corpus(ctx.input(kTrainCsv, kFromData), canonical_schema(true), "training");
  std::vector<Label> labels;
  for (const Article& a : r.corpus.articles()) labels.push_back(r.labels.at(a.doc_id));
  return {std::move(r.corpus), std::move(labels)};
}

Corpus load_classification_corpus(StageContext& ctx) {
  LoadResult r = parse_corpus(ctx.input(kCorpusCsv, kFromData), canonical_schema(false),
                              kSelectName);
  Corpus corpus = std::move(r.corpus);
  if (!ctx.config().screening_exclude) return corpus;
  const csv::Table profiles = csv::parse(ctx.input(kProfilesCsv, "profile"));
  const int id = profiles.column("doc_id"), flagged = profiles.column("flagged");
  if (id < 0 || flagged < 0) throw Error(ErrorKind::kDataError, "malformed screening/profiles.csv");
  std::set<std::string> drop;
  for (const auto& row : profiles.rows) {
    if (row[static_cast<std::size_t>(flagged)] == "true") drop.insert(row[static_cast<std::size_t>(id)]);
  }
  std::vector<Article> kept;
  for (const Article& a : corpus.articles()) {
    if (!drop.count(a.doc_id)) kept.push_back(a);
  }
  ctx.log() << "classify: excluded " << corpus.size() - kept.size() << " flagged digests\n";
  return Corpus(kSelectName, std::move(kept));
}

std::vector<MassKillingEvent> load_run_events(StageContext& ctx) {
  return parse_events(ctx.input(kEventsCsv, "ingest` (with paths.events) or `synth"));
}

void log_warnings(StageContext& ctx, const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) ctx.log() << "warning: " << w << "\n";
}

// --- ingest ---------------------------------------------------------------

void stage_ingest(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  if (c.train_path.empty() && c.corpus_path.empty() && c.events_path.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "ingest needs at least one of paths.train, paths.corpus, paths.events");
  }
  CsvSchema schema{c.schema_text, c.schema_date, c.schema_doc_id, c.schema_country,
                   "",            c.schema_source, c.schema_date_format};
  if (!c.train_path.empty()) {
    CsvSchema labeled = schema;
    labeled.label = c.schema_label;
    LoadResult r = parse_corpus(ctx.external(c.train_path), labeled, "training");
    log_warnings(ctx, r.warnings);
    if (r.labels.size() != r.corpus.size()) {
      throw Error(ErrorKind::kDataError, "training corpus " + c.train_path +
                                             " has no usable label column '" + c.schema_label + "'");
    }
    ctx.output(kTrainCsv, corpus_to_csv(r.corpus, &r.labels));
    ctx.output("data/rejects-train.csv", rejects_to_csv(r.rejects));
    ctx.log() << "ingest: training corpus " << r.corpus.size() << " articles, " << r.rejects.size()
              << " rejected rows\n";
  }
  if (!c.corpus_path.empty()) {
    LoadResult r = parse_corpus(ctx.external(c.corpus_path), schema, kSelectName);
    log_warnings(ctx, r.warnings);
    ctx.output(kCorpusCsv, corpus_to_csv(r.corpus));
    ctx.output("data/rejects-corpus.csv", rejects_to_csv(r.rejects));
    ctx.log() << "ingest: classification corpus " << r.corpus.size() << " articles, "
              << r.rejects.size() << " rejected rows\n";
  }
  if (!c.events_path.empty()) {
    const auto events = parse_events(ctx.external(c.events_path));
    ctx.output(kEventsCsv, events_to_csv(events));
    ctx.log() << "ingest: " << events.size() << " event onsets\n";
  }
}

// --- synth ----------------------------------------------------------------

void stage_synth(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  auto list_or_builtin = [&](const std::string& path, std::string_view builtin) {
    return path.empty() ? std::string(builtin) : ctx.external(path);
  };
  const Lexicons lex = make_lexicons(list_or_builtin(c.trigger_lexicon_path, builtin_trigger_lexicon()),
                                     list_or_builtin(c.filler_lexicon_path, builtin_filler_lexicon()),
                                     list_or_builtin(c.gazetteer_path, builtin_gazetteer_csv()));
  SynthParams train_params;
  train_params.seed = c.synth_seed;
  train_params.n_articles = c.synth_n;
  train_params.pos_fraction = c.synth_pos_fraction;
  train_params.digest_fraction = c.synth_digest_fraction;
  train_params.name = "training";
  train_params.id_prefix = "TRN";
  const SynthCorpus train = synth_corpus(train_params, lex);

  SynthParams corpus_params = train_params;
  corpus_params.seed = c.synth_seed + 1;
  corpus_params.n_articles = c.synth_corpus_n > 0 ? c.synth_corpus_n : 4 * c.synth_n;
  corpus_params.pos_fraction = c.synth_corpus_pos_fraction;
  corpus_params.name = kSelectName;
  corpus_params.id_prefix = "ART";
  const SynthCorpus corpus = synth_corpus(corpus_params, lex);

  const auto events = synth_events(c.synth_seed + 2, lex.countries,
                                   std::min<int>(c.synth_event_countries,
                                                 static_cast<int>(lex.countries.size())));

  const auto labels = train.label_map();
  ctx.output(kTrainCsv, corpus_to_csv(train.corpus, &labels));
  ctx.output(kCorpusCsv, corpus_to_csv(corpus.corpus));
  ctx.output(kEventsCsv, events_to_csv(events));

  csv::Writer truth({"corpus", "doc_id", "label", "digest"});
  for (const SynthCorpus* s : {&train, &corpus}) {
    for (std::size_t i = 0; i < s->corpus.size(); ++i) {
      truth.add_row({s->corpus.name(), s->corpus[i].doc_id, std::string(label_name(s->labels[i])),
                     s->digest[i] ? "true" : "false"});
    }
  }
  ctx.output("data/synth-truth.csv", truth.str());
  ctx.log() << "synth: " << train.corpus.size() << " training and " << corpus.corpus.size()
            << " classification articles, " << events.size() << " event onsets\n";
}

// --- profile --------------------------------------------------------------

void stage_profile(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const Corpus corpus =
      parse_corpus(ctx.input(kCorpusCsv, kFromData), canonical_schema(false), kSelectName).corpus;
  const Gazetteer gazetteer = gazetteer_for(ctx);
  std::vector<DigestProfile> profiles;
  profiles.reserve(corpus.size());
  for (const Article& a : corpus.articles()) profiles.push_back(profile(a, gazetteer));
  const FlagResult flagged =
      flag_digests(std::move(profiles), c.screening_threshold,
                   c.screening_conjunctive ? FlagMode::kConjunctive : FlagMode::kDisjunctive);
  log_warnings(ctx, flagged.warnings);
  const ProfileCorrelations corr = profile_correlations(flagged.profiles);

  ctx.output(kProfilesCsv, profiles_to_csv(flagged.profiles));
  ctx.output("screening/correlations.json",
             canonical_dump({{"pearson_word_country", corr.word_country},
                             {"pearson_word_year", corr.word_year},
                             {"pearson_country_year", corr.country_year},
                             {"articles", flagged.profiles.size()},
                             {"flagged", flagged.flagged_count()},
                             {"threshold", c.screening_threshold},
                             {"mode", c.screening_conjunctive ? "conjunctive" : "disjunctive"}},
                            12));
  ctx.chart(histogram_chart(word_count_histogram(corpus, c.histogram_bin_width, c.histogram_max_edge),
                            "word-counts", "Article length distribution"));
  ctx.chart(digest_scatter_chart(flagged.profiles, corr));
  ctx.log() << "profile: " << flagged.flagged_count() << " of " << flagged.profiles.size()
            << " articles flagged as digests\n";
}

// --- train ----------------------------------------------------------------

void stage_train(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const LabeledCorpus training = load_training(ctx);
  const TextPipeline pipeline = text_pipeline(ctx);
  const auto docs = pipeline.tokens(training.corpus);
  const Vocabulary vocab = fit_vocabulary(docs, c.max_features);
  std::vector<DocumentVector> vectors;
  vectors.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    vectors.push_back(transform(training.corpus[i].doc_id, docs[i], vocab));
  }
  const SvmModel model = train(vectors, training.labels, vocab, svm_params(c));
  const double accuracy = training_accuracy(model, vectors, training.labels);

  const auto [pos, neg] = top_tokens_per_class(vectors, training.labels, vocab, c.top_k,
                                               *parse_class_score(c.class_score));
  csv::Writer top({"class", "rank", "token", "score"});
  char buf[32];
  for (const ClassTokenRanking* r : {&pos, &neg}) {
    for (std::size_t i = 0; i < r->ranked.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.12g", r->ranked[i].second);
      top.add_row({std::string(label_name(r->label)), std::to_string(i + 1), r->ranked[i].first, buf});
    }
  }

  std::vector<std::size_t> order(model.weights.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return model.weights[a] != model.weights[b] ? model.weights[a] > model.weights[b]
                                                : vocab[a].token < vocab[b].token;
  });
  nlohmann::json top_weights = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(order.size(), c.top_k); ++i) {
    top_weights.push_back({{"token", vocab[order[i]].token}, {"weight", model.weights[order[i]]}});
  }
  const auto n_pos = std::count(training.labels.begin(), training.labels.end(), Label::kPositive);

  ctx.output(kVocabJson, vocab.to_json());
  ctx.output(kModelJson, model.to_json());
  ctx.output("model/top-tokens.csv", top.str());
  ctx.output("model/train-report.json",
             canonical_dump({{"documents", training.corpus.size()},
                             {"positives", n_pos},
                             {"vocabulary_size", vocab.size()},
                             {"vocab_fingerprint", vocab.fingerprint()},
                             {"training_accuracy", accuracy},
                             {"weight_norm", model.weight_norm()},
                             {"bias", model.bias},
                             {"top_positive_weights", std::move(top_weights)}},
                            12));
  ctx.chart(top_tokens_chart(pos, neg));
  ctx.log() << "train: " << training.corpus.size() << " documents, " << vocab.size()
            << " features, training accuracy " << accuracy << "\n";
}

// --- classify -------------------------------------------------------------

struct TrainedModel {
  Vocabulary vocab;
  SvmModel model;
};

TrainedModel load_model(StageContext& ctx) {
  TrainedModel m{Vocabulary::from_json(ctx.input(kVocabJson, "train")),
                 SvmModel::from_json(ctx.input(kModelJson, "train"))};
  if (m.model.vocab_fingerprint != m.vocab.fingerprint()) {
    throw Error(ErrorKind::kFingerprintMismatch,
                "model.json was trained on a different vocabulary than vocab.json");
  }
  return m;
}

struct ClassifiedPair {
  ClassificationRun select;
  ClassificationRun dependent;
  Corpus select_corpus;
};

ClassifiedPair classify_both(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const TrainedModel m = load_model(ctx);
  Corpus select = load_classification_corpus(ctx);
  const auto events = load_run_events(ctx);
  const Corpus dependent = window_filter(select, events, c.window_days, kDependentName);
  const TextPipeline pipeline = text_pipeline(ctx);
  const VocabMode mode = *parse_vocab_mode(c.vocab_mode);
  ClassificationRun b = classify_corpus(select, m.model, m.vocab, mode, pipeline);
  ClassificationRun a;
  if (dependent.empty()) {
    // No article inside any window.
    a.corpus_name = kDependentName;
    a.mode = mode;
    a.vocab = m.vocab;
    a.model = m.model;
  } else {
    a = classify_corpus(dependent, m.model, m.vocab, mode, pipeline);
  }
  return {std::move(b), std::move(a), std::move(select)};
}

std::size_t positives(const ClassificationRun& run) {
  return static_cast<std::size_t>(
      std::count_if(run.predictions.begin(), run.predictions.end(),
                    [](const Prediction& p) { return p.label == Label::kPositive; }));
}

void stage_classify(StageContext& ctx) {
  const ClassifiedPair runs = classify_both(ctx);
  for (const ClassificationRun* run : {&runs.select, &runs.dependent}) {
    ctx.output(predictions_file(run->corpus_name), predictions_to_csv(run->predictions));
    if (run->mode == VocabMode::kRefit) {
      ctx.output("classify/vocab-" + run->corpus_name + ".json", run->vocab.to_json());
    }
    ctx.log() << "classify: " << run->corpus_name << " " << positives(*run) << " of "
              << run->predictions.size() << " articles positive (" << vocab_mode_name(run->mode)
              << " vocabulary)\n";
  }
}

// --- project --------------------------------------------------------------

void stage_project(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const LabeledCorpus train = load_training(ctx);
  const TrainedModel m = load_model(ctx);
  const TextPipeline pipeline = text_pipeline(ctx);
  const auto docs = pipeline.tokens(train.corpus);
  std::vector<DocumentVector> vectors;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    vectors.push_back(transform(train.corpus[i].doc_id, docs[i], m.vocab));
  }
  const ProjectionMethod method = *parse_projection_method(c.projection_method);
  Embedding2D embedding;
  if (method == ProjectionMethod::kPca) {
    embedding = pca_2d(vectors, m.vocab.size());
  } else {
    if (static_cast<std::size_t>(c.projection_k) >= vectors.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "projection.k must be smaller than the number of training documents");
    }
    UmapOptions opts;
    opts.n_epochs = c.projection_epochs;
    opts.seed = c.projection_seed;
    opts.min_dist = c.projection_min_dist;
    embedding = umap_layout(build_fuzzy_graph(vectors, c.projection_k), opts);
    embedding.params["k"] = c.projection_k;
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) embedding.doc_ids[i] = vectors[i].doc_id;
  embedding.doc_ids.resize(vectors.size());
  const SeparatorLine2D line = fit_separator_2d(embedding, train.labels, svm_params(c));

  std::vector<std::optional<Label>> labels(train.labels.begin(), train.labels.end());
  const std::string method_name(projection_method_name(method));
  ctx.output("project/embedding-" + method_name + ".csv", embedding_to_csv(embedding, labels));
  ctx.output("project/separator.json", separator_to_json(line));
  ctx.chart(embedding_chart(embedding, train.labels, line, "training"));
  ctx.log() << "project: " << method_name << " embedding of " << vectors.size()
            << " documents, separator accuracy " << line.accuracy << "\n";
}

// --- timeline -------------------------------------------------------------

void stage_timeline(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const auto predictions = parse_predictions_csv(ctx.input(predictions_file(kSelectName), "classify"));
  const Corpus corpus =
      parse_corpus(ctx.input(kCorpusCsv, kFromData), canonical_schema(false), kSelectName).corpus;
  const auto events = load_run_events(ctx);
  const Timeline timeline = build_timeline(predictions, corpus, events, c.window_days);
  const std::size_t dependent = timeline.count(CorpusTag::kDependentSpace);
  const std::size_t null = timeline.count(CorpusTag::kNullSpace);
  ctx.output("timeline/timeline.csv", timeline_to_csv(timeline));
  ctx.output("timeline/timeline-monthly.csv", monthly_counts_to_csv(timeline));
  ctx.chart(timeline_chart(timeline, corpus));
  ctx.log() << "timeline: " << dependent << " positives inside event windows, " << null
            << " outside\n";
}

// --- diff -----------------------------------------------------------------

void stage_diff(StageContext& ctx) {
  ctx.input(predictions_file(kSelectName), "classify");
  ctx.input(predictions_file(kDependentName), "classify");
  const ClassifiedPair runs = classify_both(ctx);
  DiscrepancyReport report;
  if (runs.dependent.predictions.empty()) {
    report.corpus_a = runs.dependent.corpus_name;
    report.corpus_b = runs.select.corpus_name;
    report.mode = vocab_mode_name(runs.select.mode);
    ctx.log() << "diff: warning: " << kDependentName << " corpus is empty\n";
  } else {
    report = find_discrepancies(runs.dependent, runs.select);
  }
  ctx.output("diff/discrepancy.json", report.to_json());
  ctx.output("diff/weight-divergence.json",
             weight_divergence(runs.dependent.vocab, runs.select.vocab, ctx.config().top_k).to_json());
  ctx.log() << "diff: " << report.pairs.size() << " of " << report.shared_articles
            << " shared articles change label between " << report.corpus_a << " and "
            << report.corpus_b << " (" << report.mode << " vocabulary)\n";
}

void run_one(Stage stage, const RunConfig& config, std::ostream& log) {
  StageContext ctx(stage, config, log);
  switch (stage) {
    case Stage::kIngest: stage_ingest(ctx); break;
    case Stage::kSynth: stage_synth(ctx); break;
    case Stage::kProfile: stage_profile(ctx); break;
    case Stage::kTrain: stage_train(ctx); break;
    case Stage::kClassify: stage_classify(ctx); break;
    case Stage::kProject: stage_project(ctx); break;
    case Stage::kTimeline: stage_timeline(ctx); break;
    case Stage::kDiff: stage_diff(ctx); break;
    case Stage::kReport: break;
  }
  ctx.write_manifest();
}

}  // namespace

void run_stage(Stage stage, const RunConfig& config, std::ostream& log) {
  validate_config(config);
  io::write_file(fs::path(config.output_dir) / "config.json", config_to_json(config));
  if (stage != Stage::kReport) {
    run_one(stage, config, log);
    return;
  }
  const bool have_paths =
      !config.train_path.empty() || !config.corpus_path.empty() || !config.events_path.empty();
  run_one(have_paths ? Stage::kIngest : Stage::kSynth, config, log);
  for (Stage s : {Stage::kProfile, Stage::kTrain, Stage::kClassify, Stage::kProject,
                  Stage::kTimeline, Stage::kDiff}) {
    run_one(s, config, log);
  }
}

}  // namespace trigviz
