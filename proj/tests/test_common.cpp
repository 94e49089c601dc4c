// SPDX-License-Identifier: Apache-2.0
#include <fstream>

#include <gtest/gtest.h>

#include "rca/common/csv.hpp"
#include "rca/common/error.hpp"
#include "rca/common/hash.hpp"
#include "rca/common/random.hpp"
#include "rca/common/time.hpp"
#include "support.hpp"

namespace rca {
namespace {

TEST(Csv, SplitsQuotedFields) {
  const auto f = split_delimited(R"(a,"b,c","say ""hi""",)", ',');
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(*f, (std::vector<std::string>{"a", "b,c", "say \"hi\"", ""}));
}

TEST(Csv, UnterminatedQuoteIsRejected) { EXPECT_FALSE(split_delimited("a,\"b", ',').has_value()); }

TEST(Csv, QuoteFieldRoundTrips) {
  for (const std::string s : {"plain", "a,b", "q\"q", "line\nbreak", ""}) {
    const auto line = quote_field(s, ',') + "," + quote_field("x", ',');
    const auto f = split_delimited(line, ',');
    ASSERT_TRUE(f.has_value()) << s;
    EXPECT_EQ((*f)[0], s);
  }
}

TEST(Csv, ReadDelimitedTracksLinesAndMalformedRows) {
  const auto dir = test::scratch_dir("csv");
  const auto path = dir / "t.tsv";
  std::ofstream(path) << "a\tb\n1\t2\n\n\"3\t4\n5\t6\n";
  const auto table = read_delimited(path, '\t');
  EXPECT_EQ(table.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.rows[0].line, 2u);
  EXPECT_EQ(table.rows[1].line, 5u);
  EXPECT_EQ(table.malformed_lines, std::vector<std::size_t>{4});
  EXPECT_EQ(table.column("b"), 1u);
  EXPECT_FALSE(table.column("c").has_value());
}

TEST(Errors, ParseErrorNamesSourceAndLine) {
  const ParseError e("logs.csv", 7, "bad timestamp");
  EXPECT_STREQ(e.what(), "logs.csv:7: bad timestamp");
  EXPECT_EQ(e.line(), 7u);
  EXPECT_STREQ(ParseError("logs.csv", 0, "missing column").what(), "logs.csv: missing column");
}

TEST(Hash, KnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Time, FormatsUtcMilliseconds) {
  EXPECT_EQ(format_timestamp(0), "1970-01-01 00:00:00.000");
  EXPECT_EQ(format_timestamp(1756728000123), "2025-09-01 12:00:00.123");
}

TEST(Random, SameSeedSameStream) {
  DeterministicRng a(9), b(9), c(10);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.below(1000);
    EXPECT_EQ(x, b.below(1000));
    differs = differs || x != c.below(1000);
    const double u = a.uniform01();
    EXPECT_EQ(u, b.uniform01());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    c.uniform01();
  }
  EXPECT_TRUE(differs);
}

}  // namespace
}  // namespace rca
