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

#ifndef TRIGVIZ_TESTS_SUPPORT_ORACLES_H_
#define TRIGVIZ_TESTS_SUPPORT_ORACLES_H_

#include <map>
#include <string>
#include <vector>

#include "trigviz/corpus.h"
#include "trigviz/features.h"
#include "trigviz/project.h"

namespace trigviz::testing {

// Brute-force tf-idf straight from the definitions: vocabulary of the
// max_features most frequent tokens (ties by token), raw count times
// ln((1 + N) / (1 + df)) + 1, then unit L2 norm. Dense per-token maps.
std::vector<std::map<std::string, double>> oracle_tfidf(
    const std::vector<std::vector<std::string>>& docs, int max_features);

// Random token documents over a small alphabet of words.
std::vector<std::vector<std::string>> random_token_corpus(uint64_t seed, int max_docs,
                                                          int max_len);

// Eigenvalues of the sample covariance of dense rows, descending, through
// the n x n Gram matrix.
std::vector<double> dense_covariance_eigenvalues(const std::vector<std::vector<double>>& rows);

std::vector<DocumentVector> dense_to_vectors(const std::vector<std::vector<double>>& rows);

// Two well separated clusters of `per_cluster` points in `dim` dimensions,
// each a jittered 5 x 5 grid on a random plane.
struct ClusterFixture {
  std::vector<std::vector<double>> rows;
  std::vector<int> groups;
};
ClusterFixture two_cluster_fixture(uint64_t seed = 3, int per_cluster = 25, int dim = 20);

// Tokens of the builtin trigger lexicon and gazetteer aliases after the
// standard refinement (stopwords removed, stemmed).
std::vector<std::string> planted_tokens(bool stem = true);

// A wide classification corpus whose pre-onset subset is dense in trigger
// vocabulary, plus borderline articles with few trigger words. Fitting idf on
// the subset alone lowers the trigger weights there, which moves borderline
// decision values across zero.
struct NestedCorpora {
  SynthCorpus training;
  Corpus select;
  Corpus dependent;
  std::vector<MassKillingEvent> events;
};
NestedCorpora nested_corpora_fixture(uint64_t seed = 42);

}  // namespace trigviz::testing

#endif  // TRIGVIZ_TESTS_SUPPORT_ORACLES_H_
