#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "gsnforge/dataset.hpp"
#include "gsnforge/errors.hpp"
#include "gsnforge/prose_codec.hpp"

using namespace gsnforge;

namespace {

const char* kCase = R"(Goal G1: The drone is safe
- Context C1 (InContextOf): Operating area
- Strategy S1: Argument over hazards
-- Goal G2: Collision risk is acceptable
--- Solution Sn1: Flight test report
-- Goal G3 (Undeveloped): Battery risk is acceptable
)";

}  // namespace

TEST(ProseCodec, ParsesTree) {
  ProseParse p = parse_prose(kCase, ProseMode::kStrict);
  EXPECT_TRUE(p.anomalies.empty());
  const GsnGraph& g = p.graph;
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(g.find("Sn1")->kind, ElementKind::kSolution);
  EXPECT_TRUE(g.find("G3")->decorators.contains(Decorator::kUndeveloped));
  EXPECT_EQ(g.find_relationship(RelationKind::kSupportedBy, "S1")->targets,
            (std::vector<std::string>{"G2", "G3"}));
  EXPECT_EQ(g.find_relationship(RelationKind::kInContextOf, "G1")->targets,
            std::vector<std::string>{"C1"});
}

TEST(ProseCodec, RenderIsCanonical) {
  EXPECT_EQ(render_prose(parse_prose(kCase, ProseMode::kStrict).graph), kCase);
}

TEST(ProseCodec, EmptyInput) {
  for (ProseMode m : {ProseMode::kStrict, ProseMode::kLenient}) {
    try {
      parse_prose(" \n\t\n", m);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
    }
  }
}

TEST(ProseCodec, StrictRejectsAnomalies) {
  try {
    parse_prose("Goal G1: a\n- Evidence E1: b\n", ProseMode::kStrict);
    FAIL();
  } catch (const ProseParseError& e) {
    ASSERT_FALSE(e.anomalies().empty());
    EXPECT_EQ(e.anomalies()[0].kind, AnomalyKind::kUnknownElementKind);
    EXPECT_EQ(e.anomalies()[0].line, 2u);
  }
}

TEST(ProseCodec, LenientRepairs) {
  ProseParse p = parse_prose(
      "Here is the case:\nGoal G1: a\n- Evidence E1: b\n- Argument: c\n-- Goal G1: d\n",
      ProseMode::kLenient);
  const GsnGraph& g = p.graph;
  ASSERT_NE(g.find("E1"), nullptr);
  EXPECT_EQ(g.find("E1")->kind, ElementKind::kSolution);
  ASSERT_NE(g.find("X1"), nullptr);
  EXPECT_EQ(g.find("X1")->kind, ElementKind::kStrategy);
  EXPECT_NE(g.find("G1_2"), nullptr);
  bool dup = false;
  for (const ProseAnomaly& a : p.anomalies) dup = dup || a.kind == AnomalyKind::kDuplicateId;
  EXPECT_TRUE(dup);
}

TEST(ProseCodec, NotATree) {
  GsnGraph g = parse_prose(kCase, ProseMode::kStrict).graph;
  g.add_relationship(RelationKind::kSupportedBy, "G2", {"G1"});
  try {
    render_prose(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotATree);
  }
}

TEST(ProseCodec, DotHasEveryNode) {
  GsnGraph g = parse_prose(kCase, ProseMode::kStrict).graph;
  std::string dot = render_dot(g);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  for (const Element& e : g.elements()) EXPECT_NE(dot.find("\"" + e.id + "\""), std::string::npos) << e.id;
  EXPECT_NE(dot.find("->"), std::string::npos);
}

TEST(ProseCodec, FixtureRoundTrip) {
  Dataset ds = Dataset::load(GSNFORGE_TEST_DATASET);
  for (const std::string& key : ds.system_keys()) {
    for (const GsnGraph& g : {ds.pattern(key), ds.ground_truth(key)}) {
      GsnGraph back = parse_prose(render_prose(g), ProseMode::kStrict).graph;
      EXPECT_TRUE(equivalent(g, back)) << key << "\n" << render_prose(g);
    }
  }
}

TEST(ProseCodec, RandomRoundTrip) {
  std::mt19937 rng(9);
  for (int i = 0; i < 500; ++i) {
    GsnGraph g = gsnforge::testing::random_graph(rng);
    std::string text = render_prose(g);
    GsnGraph back = parse_prose(text, ProseMode::kStrict).graph;
    ASSERT_TRUE(equivalent(g, back)) << text << "\n---\n" << debug_dump(back);
  }
}
