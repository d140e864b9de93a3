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

#include "trigviz/preprocess.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstring>

#include "io.h"
#include "trigviz/error.h"

namespace trigviz {
namespace {

bool is_alnum_code_point(UChar32 c) {
  return c >= 0 && (U_GET_GC_MASK(c) & (U_GC_L_MASK | U_GC_N_MASK)) != 0;
}

bool is_all_numeric(std::string_view token) {
  int32_t i = 0;
  const auto length = static_cast<int32_t>(token.size());
  while (i < length) {
    UChar32 c;
    U8_NEXT(token.data(), i, length, c);
    if (c < 0 || (U_GET_GC_MASK(c) & U_GC_N_MASK) == 0) return false;
  }
  return !token.empty();
}

// Porter's algorithm as published (without the later "bli"/"logi"
// departures of the reference C code). Works on b[0..k].
class PorterStemmer {
 public:
  std::string stem(std::string_view word) {
    b_.assign(word);
    k_ = static_cast<int>(b_.size()) - 1;
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, static_cast<std::size_t>(k_ + 1));
  }

 private:
  bool cons(int i) const {
    switch (b_[static_cast<std::size_t>(i)]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int m() const {
    int n = 0;
    int i = 0;
    for (;;) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_consonant(int j) const {
    if (j < 1) return false;
    if (b_[static_cast<std::size_t>(j)] != b_[static_cast<std::size_t>(j - 1)]) return false;
    return cons(j);
  }

  // consonant-vowel-consonant ending at i, the last consonant not w, x or y.
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[static_cast<std::size_t>(i)];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    const int length = static_cast<int>(s.size());
    if (length > k_ + 1) return false;
    if (b_.compare(static_cast<std::size_t>(k_ - length + 1), s.size(), s) != 0) return false;
    j_ = k_ - length;
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), std::string::npos, s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void replace_if_measured(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

  void step1ab() {
    if (at(k_) == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (at(k_ - 1) != 's') {
        --k_;
      }
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_consonant(k_)) {
        --k_;
        const char ch = at(k_);
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else if (m() == 1 && cvc(k_)) {
        set_to("e");
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
  }

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  // First matching suffix wins; the replacement needs m() > 0.
  void apply_rules(std::initializer_list<Rule> rules) {
    for (const Rule& rule : rules) {
      if (ends(rule.suffix)) {
        replace_if_measured(rule.replacement);
        return;
      }
    }
  }

  void step2() {
    switch (at(k_ - 1)) {
      case 'a': apply_rules({{"ational", "ate"}, {"tional", "tion"}}); break;
      case 'c': apply_rules({{"enci", "ence"}, {"anci", "ance"}}); break;
      case 'e': apply_rules({{"izer", "ize"}}); break;
      case 'l':
        apply_rules({{"abli", "able"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"},
                     {"ousli", "ous"}});
        break;
      case 'o': apply_rules({{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}}); break;
      case 's':
        apply_rules({{"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}});
        break;
      case 't': apply_rules({{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}}); break;
      default: break;
    }
  }

  void step3() {
    switch (at(k_)) {
      case 'e': apply_rules({{"icate", "ic"}, {"ative", ""}, {"alize", "al"}}); break;
      case 'i': apply_rules({{"iciti", "ic"}}); break;
      case 'l': apply_rules({{"ical", "ic"}, {"ful", ""}}); break;
      case 's': apply_rules({{"ness", ""}}); break;
      default: break;
    }
  }

  void step4() {
    bool matched = false;
    switch (at(k_ - 1)) {
      case 'a': matched = ends("al"); break;
      case 'c': matched = ends("ance") || ends("ence"); break;
      case 'e': matched = ends("er"); break;
      case 'i': matched = ends("ic"); break;
      case 'l': matched = ends("able") || ends("ible"); break;
      case 'n': matched = ends("ant") || ends("ement") || ends("ment") || ends("ent"); break;
      case 'o':
        matched = (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) || ends("ou");
        break;
      case 's': matched = ends("ism"); break;
      case 't': matched = ends("ate") || ends("iti"); break;
      case 'u': matched = ends("ous"); break;
      case 'v': matched = ends("ive"); break;
      case 'z': matched = ends("ize"); break;
      default: break;
    }
    if (matched && m() > 1) k_ = j_;
  }

  void step5() {
    j_ = k_;
    if (at(k_) == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (at(k_) == 'l' && double_consonant(k_) && m() > 1) --k_;
  }

  std::string b_;
  int k_ = 0;
  int j_ = 0;
};

}  // namespace

TokenSequence normalize(std::string_view text) {
  TokenSequence out;
  std::string current;
  int32_t i = 0;
  const auto length = static_cast<int32_t>(text.size());
  while (i < length) {
    UChar32 c;
    U8_NEXT(text.data(), i, length, c);
    if (is_alnum_code_point(c)) {
      const UChar32 folded = u_foldCase(c, U_FOLD_CASE_DEFAULT);
      char buf[U8_MAX_LENGTH];
      int32_t n = 0;
      U8_APPEND_UNSAFE(buf, n, folded);
      current.append(buf, static_cast<std::size_t>(n));
    } else if (!current.empty()) {
      out.tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.tokens.push_back(std::move(current));
  return out;
}

StopwordSet parse_stopwords(std::string_view text) {
  StopwordSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    for (auto& token : normalize(text.substr(start, end - start)).tokens) {
      out.insert(std::move(token));
    }
    start = end + 1;
  }
  return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  return parse_stopwords(io::read_file(path));
}

std::string porter_stem(std::string_view word) {
  const bool ascii_lower = !word.empty() && std::all_of(word.begin(), word.end(), [](char c) {
    return c >= 'a' && c <= 'z';
  });
  if (!ascii_lower) return std::string(word);
  PorterStemmer stemmer;
  return stemmer.stem(word);
}

TokenSequence refine(const TokenSequence& tokens, const StopwordSet& stopwords,
                     const RefineOptions& options) {
  TokenSequence out;
  out.tokens.reserve(tokens.tokens.size());
  for (const std::string& token : tokens.tokens) {
    if (stopwords.contains(token) || is_all_numeric(token)) continue;
    std::string kept = options.stem ? porter_stem(token) : token;
    if (!kept.empty()) out.tokens.push_back(std::move(kept));
  }
  return out;
}

std::size_t HistogramSpec::total() const {
  std::size_t sum = overflow_count;
  for (std::size_t c : counts) sum += c;
  return sum;
}

HistogramSpec histogram(std::span<const std::size_t> values, int bin_width, int max_edge) {
  if (bin_width <= 0) throw Error(ErrorKind::kInvalidArgument, "bin_width must be positive");
  if (max_edge <= 0) throw Error(ErrorKind::kInvalidArgument, "max_edge must be positive");
  HistogramSpec spec;
  for (int edge = 0; edge < max_edge; edge += bin_width) spec.bin_edges.push_back(edge);
  spec.bin_edges.push_back(max_edge);
  spec.counts.assign(spec.bin_edges.size() - 1, 0);
  for (std::size_t v : values) {
    if (v >= static_cast<std::size_t>(max_edge)) {
      ++spec.overflow_count;
    } else {
      ++spec.counts[v / static_cast<std::size_t>(bin_width)];
    }
  }
  return spec;
}

HistogramSpec word_count_histogram(const Corpus& corpus, int bin_width, int max_edge) {
  std::vector<std::size_t> counts;
  counts.reserve(corpus.size());
  for (const Article& a : corpus.articles()) counts.push_back(normalize(a.text).word_count());
  return histogram(counts, bin_width, max_edge);
}

}  // namespace trigviz
