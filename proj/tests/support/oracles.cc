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

#include "oracles.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "trigviz/builtin_data.h"
#include "trigviz/preprocess.h"
#include "trigviz/random.h"
#include "trigviz/screening.h"

namespace trigviz::testing {

std::vector<std::map<std::string, double>> oracle_tfidf(
    const std::vector<std::vector<std::string>>& docs, int max_features) {
  std::map<std::string, int> total;
  for (const auto& doc : docs) {
    for (const auto& t : doc) ++total[t];
  }
  std::vector<std::pair<std::string, int>> ranked(total.begin(), total.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (static_cast<int>(ranked.size()) > max_features) ranked.resize(max_features);
  std::set<std::string> vocab;
  for (const auto& [t, c] : ranked) vocab.insert(t);

  const double n = static_cast<double>(docs.size());
  std::map<std::string, double> idf;
  for (const auto& t : vocab) {
    int df = 0;
    for (const auto& doc : docs) df += std::count(doc.begin(), doc.end(), t) > 0;
    idf[t] = std::log((1.0 + n) / (1.0 + df)) + 1.0;
  }
  std::vector<std::map<std::string, double>> out;
  for (const auto& doc : docs) {
    std::map<std::string, double> w;
    for (const auto& t : vocab) {
      const auto tf = std::count(doc.begin(), doc.end(), t);
      if (tf > 0) w[t] = static_cast<double>(tf) * idf[t];
    }
    double norm = 0.0;
    for (const auto& [t, v] : w) norm += v * v;
    norm = std::sqrt(norm);
    for (auto& [t, v] : w) v /= norm;
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::vector<std::string>> random_token_corpus(uint64_t seed, int max_docs,
                                                          int max_len) {
  static const char* kWords[] = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot",
                                 "golf",  "hotel", "india",   "juliet", "kilo", "lima"};
  Rng rng(seed);
  std::vector<std::vector<std::string>> docs(static_cast<std::size_t>(rng.between(2, max_docs)));
  for (auto& doc : docs) {
    const auto len = rng.between(0, max_len);
    for (int64_t i = 0; i < len; ++i) {
      // Skewed draw so frequencies and document frequencies vary.
      const double u = rng.uniform();
      doc.emplace_back(kWords[static_cast<std::size_t>(u * u * std::size(kWords))]);
    }
  }
  if (std::all_of(docs.begin(), docs.end(), [](const auto& d) { return d.empty(); })) {
    docs[0].emplace_back("alpha");
  }
  return docs;
}

std::vector<double> dense_covariance_eigenvalues(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rows[i][j];
  }
  const Eigen::MatrixXd centred = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd gram = centred * centred.transpose() / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.rbegin(), values.rend());
  return values;
}

std::vector<DocumentVector> dense_to_vectors(const std::vector<std::vector<double>>& rows) {
  std::vector<DocumentVector> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    DocumentVector v;
    v.doc_id = "P" + std::to_string(i);
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j] != 0.0) v.entries.emplace_back(static_cast<uint32_t>(j), rows[i][j]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

ClusterFixture two_cluster_fixture(uint64_t seed, int per_cluster, int dim) {
  Rng rng(seed);
  ClusterFixture f;
  for (int c = 0; c < 2; ++c) {
    std::vector<double> centre(dim), u(dim), v(dim);
    for (int j = 0; j < dim; ++j) {
      centre[j] = (c == 0 ? -8.0 : 8.0) + rng.normal();
      u[j] = rng.normal();
      v[j] = rng.normal();
    }
    // Orthonormal plane basis.
    auto normalize = [](std::vector<double>& a) {
      double s = 0.0;
      for (double x : a) s += x * x;
      for (double& x : a) x /= std::sqrt(s);
    };
    normalize(u);
    double uv = 0.0;
    for (int j = 0; j < dim; ++j) uv += u[j] * v[j];
    for (int j = 0; j < dim; ++j) v[j] -= uv * u[j];
    normalize(v);
    const int side = static_cast<int>(std::ceil(std::sqrt(per_cluster)));
    for (int p = 0; p < per_cluster; ++p) {
      const double a = p % side + 0.1 * rng.normal();
      const double b = p / side + 0.1 * rng.normal();
      std::vector<double> row(dim);
      for (int j = 0; j < dim; ++j) row[j] = centre[j] + a * u[j] + b * v[j] + 0.02 * rng.normal();
      f.rows.push_back(std::move(row));
      f.groups.push_back(c);
    }
  }
  return f;
}

std::vector<std::string> planted_tokens(bool stem) {
  const StopwordSet stopwords = parse_stopwords(builtin_stopwords());
  const RefineOptions options{stem};
  std::set<std::string> out;
  auto add = [&](const std::vector<std::string>& tokens) {
    for (const auto& t : refine(TokenSequence{tokens}, stopwords, options).tokens) out.insert(t);
  };
  for (const auto& word : default_lexicons().trigger) add(normalize(word).tokens);
  const Gazetteer gazetteer = parse_gazetteer(builtin_gazetteer_csv());
  for (const auto& [country, aliases] : gazetteer.aliases()) {
    for (const auto& alias : aliases) add(alias);
  }
  return {out.begin(), out.end()};
}

NestedCorpora nested_corpora_fixture(uint64_t seed) {
  const Lexicons lex = default_lexicons();
  NestedCorpora f;
  SynthParams params;
  params.seed = seed;
  params.n_articles = 500;
  params.name = "training";
  params.id_prefix = "TRN";
  f.training = synth_corpus(params, lex);

  params.seed = seed + 1;
  params.n_articles = 1500;
  params.pos_fraction = 0.3;
  params.name = "select_countries";
  params.id_prefix = "ART";
  const SynthCorpus background = synth_corpus(params, lex);
  f.events = synth_events(seed + 2, lex.countries, 12);

  std::vector<Article> articles(background.corpus.articles().begin(),
                                background.corpus.articles().end());
  Rng rng(seed + 3);
  auto pick = [&](const std::vector<std::string>& words) { return words[rng.below(words.size())]; };
  auto alias_of = [&](const std::string& country) {
    for (const SynthCountry& c : lex.countries) {
      if (c.name == country) return c.alias;
    }
    return country;
  };
  int next_id = 0;
  auto add = [&](const MassKillingEvent& event, int triggers, int fillers) {
    std::vector<std::string> words{alias_of(event.country)};
    for (int i = 0; i < triggers; ++i) words.push_back(pick(lex.trigger));
    for (int i = 0; i < fillers; ++i) words.push_back(pick(lex.filler));
    rng.shuffle(std::span<std::string>(words));
    std::string text;
    for (const std::string& w : words) text += (text.empty() ? "" : " ") + w;
    char id[16];
    std::snprintf(id, sizeof(id), "NST%05d", next_id++);
    articles.push_back({id, text + ".", add_days(event.onset_date, -static_cast<int>(rng.between(1, 700))),
                        event.country, std::nullopt});
  };
  for (const MassKillingEvent& event : f.events) {
    for (int i = 0; i < 25; ++i) add(event, 12, 20);
    for (int triggers = 2; triggers <= 6; ++triggers) {
      for (int fillers = 20; fillers <= 95; fillers += 15) add(event, triggers, fillers);
    }
  }
  f.select = Corpus("select_countries", std::move(articles));
  f.dependent = window_filter(f.select, f.events, kDefaultWindowDays, "dependent_space");
  return f;
}

}  // namespace trigviz::testing
