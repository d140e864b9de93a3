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

#include "cli.h"

#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trigviz/error.h"
#include "trigviz/pipeline.h"

namespace trigviz {

namespace {

std::string default_text(const RunConfig& config, const ConfigField& field) {
  return std::visit(
      [&](auto member) -> std::string {
        const auto& value = config.*member;
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return value.empty() ? "\"\"" : value;
        } else if constexpr (std::is_same_v<T, bool>) {
          return value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%g", value);
          return buf;
        } else {
          return std::to_string(value);
        }
      },
      field.member);
}

constexpr const char* kStageHelp[][2] = {
    {"ingest", "Import corpora and event onsets from the paths.* CSV files"},
    {"synth", "Generate a synthetic training corpus, classification corpus and events"},
    {"profile", "Score articles for digest characteristics and draw the profile charts"},
    {"train", "Fit the vocabulary and the linear SVM on the training corpus"},
    {"classify", "Label the select-countries corpus and its dependent-space subset"},
    {"project", "Embed the training vectors in 2-D and fit the separating line"},
    {"timeline", "Place positive classifications on a per-country timeline"},
    {"diff", "Compare labels between the two corpora and report idf divergence"},
    {"report", "Run every stage in order (ingest or synth first)"},
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const RunConfig defaults;
  CLI::App app{"Corpus screening, coup-trigger classification and chart emission.", "trigviz"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  bool show_version = false;
  app.add_option("--config", config_path,
                 "JSON file of configuration keys (flat \"svm.lambda\" or nested); flags override it")
      ->check(CLI::ExistingFile);
  app.add_flag("--version", show_version, "Print the version and exit");

  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const ConfigField& field : config_fields()) {
    const std::string key(field.key);
    std::string names = "--" + flag_name(field.key);
    if (key == "output_dir") names += ",--out,-o";
    options[key] = app.add_option(names, values[key],
                                  std::string(field.help) + " (default: " +
                                      default_text(defaults, field) + ")")
                       ->type_name(key);
  }

  std::string synth_seed, synth_n;
  Stage stage = Stage::kReport;
  std::vector<CLI::App*> subcommands;
  for (const auto& [name, help] : kStageHelp) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&stage, n = std::string(name)] { stage = *parse_stage(n); });
    if (std::string_view(name) == "synth") {
      sub->add_option("--seed", synth_seed, "alias of --synth-seed");
      sub->add_option("--n", synth_n, "alias of --synth-n");
    }
    subcommands.push_back(sub);
  }
  app.footer(
      "Every flag mirrors a configuration key: --svm-lambda sets svm.lambda.\n"
      "Exit status: 0 ok, 2 invalid argument, 3 stage input missing, 4 file not found,\n"
      "5 malformed data, 6 duplicate doc_id, 7 degenerate input, 8 vocabulary mismatch,\n"
      "9 write failure.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (show_version) {
    out << "trigviz " << version() << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    err << app.help();
    return 2;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) apply_config_file(config, config_path);
    for (const auto& [key, option] : options) {
      if (option->count() > 0) set_config_value(config, key, values[key]);
    }
    if (!synth_seed.empty()) set_config_value(config, "synth.seed", synth_seed);
    if (!synth_n.empty()) set_config_value(config, "synth.n", synth_n);
    run_stage(stage, config, out);
    return 0;
  } catch (const Error& e) {
    err << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace trigviz
