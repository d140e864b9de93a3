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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "canonical_json.h"
#include "io.h"
#include "trigviz/csv.h"
#include "trigviz/date.h"
#include "trigviz/error.h"
#include "trigviz/hash.h"
#include "trigviz/random.h"

namespace trigviz {
namespace {

TEST(CsvTest, ParsesQuotedFieldsAndEmbeddedNewlines) {
  const csv::Table t = csv::parse("a,b,c\n1,\"x, y\",\"say \"\"hi\"\"\"\n2,\"line1\nline2\",\r\n");
  ASSERT_EQ(t.header, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], "x, y");
  EXPECT_EQ(t.rows[0][2], "say \"hi\"");
  EXPECT_EQ(t.rows[1][1], "line1\nline2");
  EXPECT_EQ(t.rows[1][2], "");
  EXPECT_EQ(t.column("b"), 1);
  EXPECT_EQ(t.column("zzz"), -1);
}

TEST(CsvTest, SkipsByteOrderMark) {
  const csv::Table t = csv::parse("\xEF\xBB\xBFid,text\n1,a\n");
  EXPECT_EQ(t.header[0], "id");
}

TEST(CsvTest, UnterminatedQuoteIsDataError) {
  try {
    csv::parse("a,b\n1,\"open\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDataError);
  }
}

TEST(CsvTest, EscapeRoundTrips) {
  csv::Writer w({"a", "b"});
  w.add_row({"plain", "has,comma \"q\"\nnl"});
  const csv::Table t = csv::parse(w.str());
  EXPECT_EQ(t.rows[0][1], "has,comma \"q\"\nnl");
  EXPECT_EQ(csv::escape("plain"), "plain");
}

TEST(DateTest, IsoParsingRejectsImpossibleDates) {
  EXPECT_TRUE(parse_iso_date("1994-04-06").has_value());
  EXPECT_FALSE(parse_iso_date("1993-13-45").has_value());
  EXPECT_FALSE(parse_iso_date("1993-02-29").has_value());
  EXPECT_TRUE(parse_iso_date("1992-02-29").has_value());
  EXPECT_FALSE(parse_iso_date("94-04-06").has_value());
  EXPECT_FALSE(parse_iso_date("1994-4-6").has_value());
}

TEST(DateTest, CustomFormat) {
  const auto d = parse_date("06/04/1994", "%d/%m/%Y");
  ASSERT_TRUE(d);
  EXPECT_EQ(format_iso_date(*d), "1994-04-06");
  EXPECT_EQ(format_year_month(*d), "1994-04");
  EXPECT_FALSE(parse_date("1994-04-06", "%d/%m/%Y").has_value());
}

TEST(DateTest, ArithmeticAndFractionalYear) {
  const Date d = *parse_iso_date("2000-03-01");
  EXPECT_EQ(format_iso_date(add_days(d, -1)), "2000-02-29");
  EXPECT_EQ(days_since_epoch(*parse_iso_date("1970-01-02")), 1);
  EXPECT_DOUBLE_EQ(fractional_year(*parse_iso_date("2001-01-01")), 2001.0);
  EXPECT_GT(fractional_year(*parse_iso_date("1994-04-06")), 1994.25);
  EXPECT_LT(fractional_year(*parse_iso_date("1994-04-06")), 1994.27);
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(5), b(5), c(6);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(Rng(5).next(), c.next());
}

TEST(RngTest, BelowStaysInRangeAndUniformInUnitInterval) {
  Rng rng(1);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    ++hist[x];
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  for (int h : hist) EXPECT_GT(h, 800);
}

TEST(RngTest, NormalHasUnitMoments) {
  Rng rng(2);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.03);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(RngTest, ShuffleIsPermutation) {
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  Rng rng(3);
  rng.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(HashTest, KnownDigests) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CanonicalJsonTest, SortedKeysAndFixedDigits) {
  const nlohmann::json j = {{"b", 0.1 + 0.2}, {"a", -0.0}, {"c", {1, 2}}, {"d", "x"}};
  EXPECT_EQ(canonical_dump(j, 9),
            "{\n  \"a\": 0,\n  \"b\": 0.3,\n  \"c\": [\n    1,\n    2\n  ],\n  \"d\": \"x\"\n}\n");
  EXPECT_THROW(canonical_dump({{"x", std::nan("")}}, 9), Error);
  EXPECT_DOUBLE_EQ(round_significant(1.23456789012, 3), 1.23);
}

TEST(IoTest, MissingFileIsNotFoundAndWriteCreatesParents) {
  const auto dir = std::filesystem::temp_directory_path() / "trigviz-io-test";
  std::filesystem::remove_all(dir);
  try {
    io::read_file(dir / "nope.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotFound);
  }
  io::write_file(dir / "a" / "b.txt", "hello");
  EXPECT_EQ(io::read_file(dir / "a" / "b.txt"), "hello");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace trigviz
