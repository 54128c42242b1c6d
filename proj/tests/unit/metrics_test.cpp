#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "generators.hpp"
#include "gsnforge/errors.hpp"
#include "gsnforge/metrics.hpp"
#include "gsnforge/prose_codec.hpp"
#include "gsnforge/text.hpp"
#include "oracles.hpp"

using namespace gsnforge;

namespace {

std::vector<std::string> random_tokens(std::mt19937& rng, int max_len) {
  static const std::vector<std::string> v = {"a", "b", "c", "d", "e"};
  int n = std::uniform_int_distribution<int>(0, max_len)(rng);
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(v[std::uniform_int_distribution<std::size_t>(0, 4)(rng)]);
  return out;
}

std::vector<double> random_ranks(std::mt19937& rng, std::size_t n) {
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::uniform_int_distribution<int>(1, 5)(rng));
  return out;
}

std::string join(const std::vector<std::string>& t) {
  std::string s;
  for (const auto& w : t) s += (s.empty() ? "" : " ") + w;
  return s;
}

}  // namespace

TEST(Metrics, Names) {
  EXPECT_EQ(parse_metric("exact"), MetricKind::kExactMatch);
  EXPECT_EQ(parse_metric("cosine_tfidf"), MetricKind::kCosineSim);
  EXPECT_EQ(parse_metric("tau"), MetricKind::kKendallTau);
  EXPECT_FALSE(parse_metric("rouge"));
  EXPECT_EQ(to_string(MetricKind::kBleu), "bleu");
}

TEST(Metrics, Canonicalize) {
  EXPECT_EQ(canonicalize("  Goal   G1:  X \n\n\t- Context–C1 \n"), "goal g1: x\n- context-c1");
  EXPECT_EQ(tokenize("Goal G1: The {System}, is-safe!"),
            (std::vector<std::string>{"goal", "g1", "the", "system", "is", "safe"}));
}

TEST(Metrics, ExactMatchKnownValue) {
  EXPECT_DOUBLE_EQ(exact_match("abcd", "abce"), 0.75);
  EXPECT_DOUBLE_EQ(exact_match("", ""), 1.0);
  EXPECT_DOUBLE_EQ(exact_match("abc", ""), 0.0);
  EXPECT_DOUBLE_EQ(exact_match("ABC", "abc"), 1.0);
}

TEST(Metrics, LcsMatchesDynamicProgramming) {
  std::mt19937 rng(1);
  for (int i = 0; i < 400; ++i) {
    auto a = text::decode_utf8(gsnforge::testing::random_text(rng, 150));
    auto b = text::decode_utf8(gsnforge::testing::random_text(rng, 150));
    ASSERT_EQ(lcs_length(a, b), gsnforge::testing::lcs_dp(a, b));
  }
  std::u32string longa(300, U'a');
  std::u32string longb = longa + U"b";
  EXPECT_EQ(lcs_length(longa, longb), 300u);
}

TEST(Metrics, BleuMatchesBruteForce) {
  std::mt19937 rng(2);
  for (int i = 0; i < 300; ++i) {
    auto c = random_tokens(rng, 12);
    auto r = random_tokens(rng, 12);
    ASSERT_NEAR(bleu_tokens(c, r).value, gsnforge::testing::bleu_bruteforce(c, r), 1e-9) << join(c) << " | " << join(r);
  }
}

TEST(Metrics, BleuDetails) {
  MetricValue v = bleu_detailed("the cat sat", "the cat sat on the mat");
  EXPECT_EQ(v.details.at("order"), 3);
  EXPECT_NEAR(v.details.at("bp"), std::exp(1.0 - 6.0 / 3.0), 1e-12);
  EXPECT_NEAR(v.value, v.details.at("bp"), 1e-12);
  EXPECT_DOUBLE_EQ(bleu("dog", "the cat"), 0.0);
  EXPECT_DOUBLE_EQ(bleu("", "the cat"), 0.0);
}

TEST(Metrics, TauMatchesBruteForce) {
  std::mt19937 rng(3);
  int checked = 0;
  while (checked < 300) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, 25)(rng);
    auto a = random_ranks(rng, n);
    auto b = random_ranks(rng, n);
    double want = gsnforge::testing::tau_b_bruteforce(a, b);
    if (!std::isfinite(want)) {
      EXPECT_THROW(kendall_tau(a, b), Error);
      continue;
    }
    MetricValue got = kendall_tau_detailed(a, b);
    ASSERT_NEAR(got.value, want, 1e-9);
    gsnforge::testing::PairCounts pc = gsnforge::testing::pair_counts(a, b);
    EXPECT_EQ(got.details.at("concordant"), pc.concordant);
    EXPECT_EQ(got.details.at("discordant"), pc.discordant);
    ++checked;
  }
}

TEST(Metrics, TauSelfAgreementIsExact) {
  std::mt19937 rng(8);
  for (int i = 0; i < 200; ++i) {
    auto a = random_ranks(rng, std::uniform_int_distribution<std::size_t>(2, 30)(rng));
    if (std::adjacent_find(a.begin(), a.end(), std::not_equal_to<>{}) == a.end()) continue;
    ASSERT_EQ(kendall_tau(a, a), 1.0);
  }
}

TEST(Metrics, TauEdgeCases) {
  EXPECT_DOUBLE_EQ(kendall_tau({1, 2, 3, 4}, {1, 2, 3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code([] { kendall_tau({1, 2}, {1}); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code([] { kendall_tau({1}, {1}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code([] { kendall_tau({2, 2, 2}, {1, 2, 3}); }), ErrorCode::kAllTied);
}

TEST(Metrics, CosineMatchesManual) {
  std::mt19937 rng(4);
  for (int i = 0; i < 300; ++i) {
    auto a = random_tokens(rng, 10);
    auto b = random_tokens(rng, 10);
    ASSERT_NEAR(cosine_tfidf(join(a), join(b)), gsnforge::testing::tfidf_manual(a, b), 1e-9);
  }
  EXPECT_DOUBLE_EQ(cosine_tfidf("b a a", "a b a"), 1.0);
  EXPECT_EQ(cosine_tfidf_detailed("", "x").details.at("empty"), 1);
}

TEST(Metrics, SelfSimilarityAndBounds) {
  std::mt19937 rng(6);
  for (int i = 0; i < 2000; ++i) {
    std::string a = gsnforge::testing::random_text(rng, 60);
    std::string b = gsnforge::testing::random_text(rng, 60);
    for (const MetricValue& v : score_text(a, b)) {
      ASSERT_GE(v.value, 0.0);
      ASSERT_LE(v.value, 1.0);
    }
    if (!tokenize(a).empty()) {
      for (const MetricValue& v : score_text(a, a)) ASSERT_EQ(v.value, 1.0) << to_string(v.metric) << " " << a;
    }
  }
}

TEST(Metrics, Aggregate) {
  Aggregate a = aggregate({1, 3, 2, 4});
  EXPECT_DOUBLE_EQ(a.median, 2.5);
  EXPECT_DOUBLE_EQ(a.stddev, std::sqrt(1.25));
  EXPECT_EQ(aggregate({0.5}), (Aggregate{0.5, 0.0}));
  EXPECT_THROW(aggregate({}), Error);
}

TEST(Metrics, PerElement) {
  GsnGraph ref = parse_prose("Goal G1: The rover is safe\n- Solution Sn1: Test report\n", ProseMode::kStrict).graph;
  GsnGraph cand = parse_prose("Goal G1: The rover is safe\n- Solution Sn2: Other\n", ProseMode::kStrict).graph;
  auto scores = score_per_element(cand, ref);
  ASSERT_EQ(scores.size(), 3u);
  for (const ElementScore& s : scores) {
    ASSERT_EQ(s.values.size(), 3u);
    if (s.id == "G1") {
      for (const auto& v : s.values) EXPECT_DOUBLE_EQ(v.value, 1.0);
    } else {
      EXPECT_NE(s.in_candidate, s.in_reference);
      for (const auto& v : s.values) EXPECT_DOUBLE_EQ(v.value, 0.0);
    }
  }
}
