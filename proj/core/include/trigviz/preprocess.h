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

#ifndef TRIGVIZ_PREPROCESS_H_
#define TRIGVIZ_PREPROCESS_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "trigviz/corpus.h"

namespace trigviz {

// Lowercase alphanumeric tokens. Every token is non-empty and consists only
// of Unicode Letter or Number code points.
struct TokenSequence {
  std::vector<std::string> tokens;

  std::size_t word_count() const { return tokens.size(); }
  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

// First-stage normalization: simple case folding, then split on every
// maximal run of non-alphanumeric code points. Invalid UTF-8 bytes act as
// separators. Numbers are kept.
TokenSequence normalize(std::string_view text);

using StopwordSet = std::unordered_set<std::string>;

// One token per line; blank lines ignored. Entries are normalized so that
// "Don't" in a list file behaves like the tokens normalize() produces.
StopwordSet parse_stopwords(std::string_view text);
StopwordSet load_stopwords(const std::filesystem::path& path);

struct RefineOptions {
  bool stem = true;
};

// Second-stage refinement: drop stopwords, drop all-digit tokens, then stem
// what remains. Order is preserved.
TokenSequence refine(const TokenSequence& tokens, const StopwordSet& stopwords,
                     const RefineOptions& options = {});

// Porter's suffix-stripping stemmer (steps 1a through 5b). Tokens that are
// not pure ASCII lowercase letters are returned unchanged.
std::string porter_stem(std::string_view word);

// Word-count histogram with bins [0,w), [w,2w), ... The last edge is
// max_edge, so the final bin may be narrower than w.
struct HistogramSpec {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  std::size_t overflow_count = 0;

  std::size_t total() const;
};

HistogramSpec histogram(std::span<const std::size_t> values, int bin_width, int max_edge);
HistogramSpec word_count_histogram(const Corpus& corpus, int bin_width = 100,
                                   int max_edge = 2000);

}  // namespace trigviz

#endif  // TRIGVIZ_PREPROCESS_H_
