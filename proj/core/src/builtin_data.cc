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

#include "trigviz/builtin_data.h"

#include <set>

#include "trigviz/csv.h"
#include "trigviz/error.h"

namespace trigviz {

namespace embedded {
extern const char kStopwords[];
extern const char kGazetteer[];
extern const char kTriggerLexicon[];
extern const char kFillerLexicon[];
}  // namespace embedded

std::string_view builtin_stopwords() { return embedded::kStopwords; }
std::string_view builtin_gazetteer_csv() { return embedded::kGazetteer; }
std::string_view builtin_trigger_lexicon() { return embedded::kTriggerLexicon; }
std::string_view builtin_filler_lexicon() { return embedded::kFillerLexicon; }

std::vector<std::string> parse_word_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (!line.empty() && line.front() != '#') out.emplace_back(line);
    pos = end + 1;
  }
  return out;
}

Lexicons make_lexicons(std::string_view trigger_text, std::string_view filler_text,
                       std::string_view gazetteer_csv) {
  Lexicons lex;
  lex.trigger = parse_word_list(trigger_text);
  lex.filler = parse_word_list(filler_text);
  const csv::Table table = csv::parse(gazetteer_csv);
  const int country = table.column("country");
  const int alias = table.column("alias");
  if (country < 0 || alias < 0) {
    throw Error(ErrorKind::kDataError, "gazetteer needs 'country' and 'alias' columns");
  }
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    if (seen.insert(row[static_cast<std::size_t>(country)]).second) {
      lex.countries.push_back(
          {row[static_cast<std::size_t>(country)], row[static_cast<std::size_t>(alias)]});
    }
  }
  if (lex.trigger.empty() || lex.filler.empty() || lex.countries.empty()) {
    throw Error(ErrorKind::kDataError, "synthetic lexicons must not be empty");
  }
  return lex;
}

Lexicons default_lexicons() {
  return make_lexicons(builtin_trigger_lexicon(), builtin_filler_lexicon(),
                       builtin_gazetteer_csv());
}

}  // namespace trigviz
