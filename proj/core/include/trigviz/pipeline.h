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

#ifndef TRIGVIZ_PIPELINE_H_
#define TRIGVIZ_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "trigviz/error.h"

namespace trigviz {

std::string_view version();

// Effective configuration of one run. Every field has a flat namespaced key
// ("svm.lambda") that doubles as a command line flag ("--svm-lambda").
struct RunConfig {
  // Corpus and event paths are read by `ingest`, which copies them into the
  // run directory. Empty lexicon paths select the builtin lists.
  std::string output_dir = "trigviz-run";
  std::string train_path;
  std::string corpus_path;
  std::string events_path;
  std::string gazetteer_path;
  std::string stopwords_path;
  std::string trigger_lexicon_path;
  std::string filler_lexicon_path;

  // schema.* column names for ingest.
  std::string schema_text = "text";
  std::string schema_date = "date";
  std::string schema_doc_id = "doc_id";
  std::string schema_country = "country";
  std::string schema_label = "label";
  std::string schema_source;
  std::string schema_date_format = "%Y-%m-%d";

  int max_features = 5000;
  bool stem = true;
  int top_k = 20;
  std::string class_score = "mean";

  double svm_lambda = 1e-4;
  int svm_epochs = 100;
  uint64_t svm_seed = 7;

  double screening_threshold = 0.95;
  bool screening_conjunctive = true;
  bool screening_exclude = false;

  std::string projection_method = "umap";
  int projection_k = 15;
  double projection_min_dist = 0.1;
  int projection_epochs = 500;
  uint64_t projection_seed = 11;

  std::string vocab_mode = "shared";
  int window_days = 730;

  int histogram_bin_width = 100;
  int histogram_max_edge = 2000;

  uint64_t synth_seed = 42;
  int synth_n = 500;
  int synth_corpus_n = 0;  // 0: four times synth.n
  double synth_pos_fraction = 0.5;
  double synth_corpus_pos_fraction = 0.3;
  double synth_digest_fraction = 0.1;
  int synth_event_countries = 12;

  bool render_svg = true;
};

using ConfigMember = std::variant<std::string RunConfig::*, int RunConfig::*,
                                  double RunConfig::*, bool RunConfig::*,
                                  uint64_t RunConfig::*>;

struct ConfigField {
  std::string_view key;
  std::string_view help;
  ConfigMember member;
};

std::span<const ConfigField> config_fields();

// "svm.lambda" -> "svm-lambda".
std::string flag_name(std::string_view key);

// Applies a flat JSON object of overrides. Unknown keys and type mismatches
// throw kInvalidArgument naming the field.
void apply_config_json(RunConfig& config, std::string_view json_text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

// Sets one field from its textual form (flag value).
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

// Range and enum checks with field-level messages; referenced input files
// must exist.
void validate_config(const RunConfig& config);

// Sorted-key JSON echo of every field.
std::string config_to_json(const RunConfig& config);

enum class Stage { kIngest, kSynth, kProfile, kTrain, kClassify, kProject, kTimeline, kDiff, kReport };

std::optional<Stage> parse_stage(std::string_view name);
std::string_view stage_name(Stage stage);

// Runs one stage against the run directory, then writes its manifest
// (input hashes, config echo, version, timestamp).
void run_stage(Stage stage, const RunConfig& config, std::ostream& log);

// Stable exit status per error class; 0 is success.
int exit_code(ErrorKind kind);

}  // namespace trigviz

#endif  // TRIGVIZ_PIPELINE_H_
