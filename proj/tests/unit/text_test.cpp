#include <gtest/gtest.h>

#include <algorithm>

#include "gsnforge/errors.hpp"
#include "gsnforge/text.hpp"

using namespace gsnforge;

TEST(Text, TrimAndSplit) {
  EXPECT_EQ(text::trim("  a b \t"), "a b");
  EXPECT_EQ(text::trim(""), "");
  auto lines = text::split_lines("a\r\nb\n\nc");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "a");
  EXPECT_EQ(lines[2], "");
  EXPECT_EQ(lines[3], "c");
}

TEST(Text, Utf8RoundTrip) {
  const std::string s = "G1 – é ✓";
  EXPECT_EQ(text::encode_utf8(text::decode_utf8(s)), s);
  EXPECT_EQ(text::decode_utf8("\xff").front(), U'�');
  EXPECT_EQ(text::fold_case(U'É'), U'é');
  EXPECT_EQ(text::fold_case(U'Q'), U'q');
}

TEST(Text, NaturalOrder) {
  std::vector<std::string> ids = {"G10", "G2", "G10.1", "G1", "Sn1", "G3.2", "G3.10"};
  std::sort(ids.begin(), ids.end(), text::NaturalLess{});
  EXPECT_EQ(ids, (std::vector<std::string>{"G1", "G2", "G3.2", "G3.10", "G10", "G10.1", "Sn1"}));
}

TEST(Text, PlaceholderSpans) {
  auto spans = text::placeholder_spans("{System} is secure against {threat}");
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0].begin, 0u);
  EXPECT_EQ(spans[0].end, 8u);
  EXPECT_TRUE(text::placeholder_spans("no braces").empty());
  EXPECT_TRUE(text::has_malformed_braces("open {brace"));
  EXPECT_TRUE(text::has_malformed_braces("nested {a {b}}"));
  EXPECT_TRUE(text::has_malformed_braces("close} first"));
  EXPECT_FALSE(text::has_malformed_braces("{a} and {b}"));
}

TEST(Errors, CodesHaveNames) {
  EXPECT_EQ(to_string(ErrorCode::kCycleDetected), "CycleDetected");
  SourceError e(ErrorCode::kSyntaxError, 3, 7, "bad");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 7u);
  EXPECT_EQ(e.code(), ErrorCode::kSyntaxError);
}
