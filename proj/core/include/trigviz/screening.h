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

#ifndef TRIGVIZ_SCREENING_H_
#define TRIGVIZ_SCREENING_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigviz/corpus.h"
#include "trigviz/preprocess.h"

namespace trigviz {

// Country name lookup. Aliases are stored as normalized token sequences and
// matched as contiguous subsequences, longest alias first.
class Gazetteer {
 public:
  Gazetteer() = default;

  // Normalizes `alias`; throws kInvalidArgument if it normalizes to nothing.
  void add(const std::string& country, std::string_view alias);

  std::size_t size() const { return aliases_.size(); }
  const std::map<std::string, std::vector<std::vector<std::string>>>& aliases() const {
    return aliases_;
  }

  // Distinct countries mentioned in `tokens`. Scans left to right; at each
  // position the longest matching alias is consumed.
  std::vector<std::string> countries_in(std::span<const std::string> tokens) const;

 private:
  struct Entry {
    std::vector<std::string> tokens;
    std::string country;
  };

  std::map<std::string, std::vector<std::vector<std::string>>> aliases_;
  // First token -> candidate aliases, longest first.
  std::map<std::string, std::vector<Entry>, std::less<>> by_first_;
};

// CSV with columns (country, alias), one alias per row.
Gazetteer parse_gazetteer(std::string_view csv_text);
Gazetteer load_gazetteer(const std::filesystem::path& path);

struct DigestProfile {
  std::string doc_id;
  std::size_t word_count = 0;
  std::size_t country_count = 0;
  std::size_t year_count = 0;
  // Ranks for (word, country, year), set by flag_digests.
  std::array<double, 3> percentile_ranks{0.0, 0.0, 0.0};
  bool flagged = false;
};

DigestProfile profile(const Article& article, const Gazetteer& gazetteer);
DigestProfile profile(std::string doc_id, const TokenSequence& tokens,
                      const Gazetteer& gazetteer);

// True for tokens matching ^(19|20)[0-9]{2}$.
bool is_year_token(std::string_view token);

enum class FlagMode { kConjunctive, kDisjunctive };

struct FlagResult {
  std::vector<DigestProfile> profiles;
  std::vector<std::string> warnings;

  std::size_t flagged_count() const;
};

// Nearest-rank inclusive percentile: |{x in S : x <= v}| / |S|.
std::vector<double> percentile_ranks(std::span<const double> series);

// Fills ranks and flags. Conjunctive mode flags an article when all three
// ranks reach `threshold`; disjunctive mode when any does. Requires at least
// two profiles and 0 < threshold < 1.
FlagResult flag_digests(std::vector<DigestProfile> profiles, double threshold = 0.95,
                        FlagMode mode = FlagMode::kConjunctive);

// Product-moment correlation. Throws kDegenerate for a constant series and
// kInvalidArgument for mismatched or too-short inputs.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Correlations between the three characteristics over a profile set.
struct ProfileCorrelations {
  double word_country = 0.0;
  double word_year = 0.0;
  double country_year = 0.0;
};

ProfileCorrelations profile_correlations(std::span<const DigestProfile> profiles);

std::string profiles_to_csv(std::span<const DigestProfile> profiles);

}  // namespace trigviz

#endif  // TRIGVIZ_SCREENING_H_
