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

#include "trigviz/screening.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "io.h"
#include "trigviz/csv.h"
#include "trigviz/error.h"

namespace trigviz {

void Gazetteer::add(const std::string& country, std::string_view alias) {
  TokenSequence tokens = normalize(alias);
  if (tokens.tokens.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "gazetteer alias for \"" + country + "\" normalizes to nothing");
  }
  auto& list = aliases_[country];
  if (std::find(list.begin(), list.end(), tokens.tokens) != list.end()) return;
  list.push_back(tokens.tokens);
  auto& candidates = by_first_[tokens.tokens.front()];
  candidates.push_back({tokens.tokens, country});
  std::stable_sort(candidates.begin(), candidates.end(), [](const Entry& a, const Entry& b) {
    return a.tokens.size() > b.tokens.size();
  });
}

std::vector<std::string> Gazetteer::countries_in(std::span<const std::string> tokens) const {
  std::set<std::string> found;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t consumed = 1;
    auto it = by_first_.find(tokens[i]);
    if (it != by_first_.end()) {
      for (const Entry& entry : it->second) {
        const std::size_t len = entry.tokens.size();
        if (i + len <= tokens.size() &&
            std::equal(entry.tokens.begin(), entry.tokens.end(), tokens.begin() + i)) {
          found.insert(entry.country);
          consumed = len;
          break;
        }
      }
    }
    i += consumed;
  }
  return {found.begin(), found.end()};
}

Gazetteer parse_gazetteer(std::string_view csv_text) {
  const csv::Table table = csv::parse(csv_text);
  const int country_col = table.column("country");
  const int alias_col = table.column("alias");
  if (country_col < 0 || alias_col < 0) {
    throw Error(ErrorKind::kNotFound, "gazetteer needs columns country,alias");
  }
  Gazetteer gazetteer;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size()) {
      throw Error(ErrorKind::kDataError, "gazetteer row " + std::to_string(r + 1) + " malformed");
    }
    gazetteer.add(row[static_cast<std::size_t>(country_col)],
                  row[static_cast<std::size_t>(alias_col)]);
  }
  return gazetteer;
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
  return parse_gazetteer(io::read_file(path));
}

bool is_year_token(std::string_view token) {
  if (token.size() != 4) return false;
  if (!std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return false;
  }
  return token.starts_with("19") || token.starts_with("20");
}

DigestProfile profile(std::string doc_id, const TokenSequence& tokens,
                      const Gazetteer& gazetteer) {
  DigestProfile p;
  p.doc_id = std::move(doc_id);
  p.word_count = tokens.word_count();
  p.country_count = gazetteer.countries_in(tokens.tokens).size();
  std::set<std::string_view> years;
  for (const std::string& t : tokens.tokens) {
    if (is_year_token(t)) years.insert(t);
  }
  p.year_count = years.size();
  return p;
}

DigestProfile profile(const Article& article, const Gazetteer& gazetteer) {
  return profile(article.doc_id, normalize(article.text), gazetteer);
}

std::size_t FlagResult::flagged_count() const {
  return static_cast<std::size_t>(
      std::count_if(profiles.begin(), profiles.end(), [](const auto& p) { return p.flagged; }));
}

std::vector<double> percentile_ranks(std::span<const double> series) {
  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ranks;
  ranks.reserve(series.size());
  const auto n = static_cast<double>(series.size());
  for (double v : series) {
    const auto at_or_below = std::upper_bound(sorted.begin(), sorted.end(), v) - sorted.begin();
    ranks.push_back(static_cast<double>(at_or_below) / n);
  }
  return ranks;
}

FlagResult flag_digests(std::vector<DigestProfile> profiles, double threshold, FlagMode mode) {
  if (profiles.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "flag_digests needs at least two profiles");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "flag threshold must lie in (0, 1)");
  }
  std::array<std::vector<double>, 3> series;
  for (const DigestProfile& p : profiles) {
    series[0].push_back(static_cast<double>(p.word_count));
    series[1].push_back(static_cast<double>(p.country_count));
    series[2].push_back(static_cast<double>(p.year_count));
  }
  std::array<std::vector<double>, 3> ranks;
  for (int s = 0; s < 3; ++s) ranks[s] = percentile_ranks(series[s]);

  FlagResult result;
  constexpr std::string_view kNames[] = {"word_count", "country_count", "year_count"};
  for (int s = 0; s < 3; ++s) {
    const auto [lo, hi] = std::minmax_element(series[s].begin(), series[s].end());
    if (*lo == *hi) {
      result.warnings.push_back(std::string(kNames[s]) +
                                " is identical for every article; all ranks are 1.0");
    }
  }
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    int above = 0;
    for (int s = 0; s < 3; ++s) {
      profiles[i].percentile_ranks[static_cast<std::size_t>(s)] = ranks[s][i];
      if (ranks[s][i] >= threshold) ++above;
    }
    profiles[i].flagged = mode == FlagMode::kConjunctive ? above == 3 : above > 0;
  }
  result.profiles = std::move(profiles);
  if (result.flagged_count() == result.profiles.size()) {
    result.warnings.push_back("every article is flagged; the characteristics do not discriminate");
  }
  return result;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorKind::kInvalidArgument, "pearson needs series of equal length");
  }
  if (xs.size() < 2) throw Error(ErrorKind::kInvalidArgument, "pearson needs at least 2 points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorKind::kDegenerate, "correlation undefined for a constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ProfileCorrelations profile_correlations(std::span<const DigestProfile> profiles) {
  std::vector<double> w, c, y;
  for (const DigestProfile& p : profiles) {
    w.push_back(static_cast<double>(p.word_count));
    c.push_back(static_cast<double>(p.country_count));
    y.push_back(static_cast<double>(p.year_count));
  }
  return {pearson(w, c), pearson(w, y), pearson(c, y)};
}

std::string profiles_to_csv(std::span<const DigestProfile> profiles) {
  csv::Writer writer({"doc_id", "word_count", "country_count", "year_count", "rank_w", "rank_c",
                      "rank_y", "flagged"});
  char buf[3][32];
  for (const DigestProfile& p : profiles) {
    for (int s = 0; s < 3; ++s) {
      std::snprintf(buf[s], sizeof(buf[s]), "%.6f", p.percentile_ranks[static_cast<std::size_t>(s)]);
    }
    writer.add_row({p.doc_id, std::to_string(p.word_count), std::to_string(p.country_count),
                    std::to_string(p.year_count), buf[0], buf[1], buf[2],
                    p.flagged ? "true" : "false"});
  }
  return writer.str();
}

}  // namespace trigviz
