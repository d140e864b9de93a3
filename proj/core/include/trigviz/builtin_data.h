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

#ifndef TRIGVIZ_BUILTIN_DATA_H_
#define TRIGVIZ_BUILTIN_DATA_H_

#include <string_view>
#include <vector>
#include <string>

#include "trigviz/corpus.h"

namespace trigviz {

// Copies of the files under data/, compiled in so the tool works without a
// data directory. Paths in the run configuration override them.
std::string_view builtin_stopwords();        // data/stopwords-en-v1.txt
std::string_view builtin_gazetteer_csv();    // data/gazetteer.csv
std::string_view builtin_trigger_lexicon();  // data/lexicons/trigger-v1.txt
std::string_view builtin_filler_lexicon();   // data/lexicons/filler-v1.txt

// One token per line, blank lines skipped.
std::vector<std::string> parse_word_list(std::string_view text);

// Synthetic-corpus lexicons; countries take the first alias listed per
// country in the gazetteer CSV.
Lexicons make_lexicons(std::string_view trigger_text, std::string_view filler_text,
                       std::string_view gazetteer_csv);
Lexicons default_lexicons();

}  // namespace trigviz

#endif  // TRIGVIZ_BUILTIN_DATA_H_
