#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "gsnforge/errors.hpp"
#include "gsnforge/graph.hpp"
#include "oracles.hpp"

using namespace gsnforge;

namespace {

Element el(const std::string& id, ElementKind k, const std::string& d = "text") {
  Element e;
  e.id = id;
  e.kind = k;
  e.description = d;
  e.has_placeholder = description_has_placeholder(d);
  return e;
}

GsnGraph small() {
  GsnGraph g;
  g.add_element(el("G1", ElementKind::kGoal, "{System} is safe"));
  g.add_element(el("C1", ElementKind::kContext));
  g.add_element(el("S1", ElementKind::kStrategy));
  g.add_element(el("G2", ElementKind::kGoal));
  g.add_element(el("Sn1", ElementKind::kSolution, "{a} and {b}"));
  g.add_relationship(RelationKind::kInContextOf, "G1", {"C1"});
  g.add_relationship(RelationKind::kSupportedBy, "G1", {"S1"});
  g.add_relationship(RelationKind::kSupportedBy, "S1", {"G2"});
  g.add_relationship(RelationKind::kSupportedBy, "G2", {"Sn1"});
  return g;
}

}  // namespace

TEST(Graph, KindNamesAndPrefixes) {
  EXPECT_EQ(parse_element_kind("Goal"), ElementKind::kGoal);
  EXPECT_FALSE(parse_element_kind("Evidence").has_value());
  EXPECT_FALSE(parse_element_kind("goal").has_value());
  EXPECT_EQ(conventional_prefix(ElementKind::kSolution), "Sn");
  EXPECT_TRUE(is_contextual_kind(ElementKind::kJustification));
  EXPECT_FALSE(is_contextual_kind(ElementKind::kStrategy));
  EXPECT_TRUE(decorator_allowed_on(Decorator::kUninstantiated, ElementKind::kContext));
  EXPECT_FALSE(decorator_allowed_on(Decorator::kUndeveloped, ElementKind::kSolution));
}

TEST(Graph, RelationshipsMergePerSource) {
  GsnGraph g = small();
  g.add_relationship(RelationKind::kSupportedBy, "S1", {"G2"});
  const Relationship* r = g.find_relationship(RelationKind::kSupportedBy, "S1");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->targets.size(), 1u);
  EXPECT_EQ(g.edges().size(), 4u);
}

TEST(Graph, Summary) {
  GsnGraph g = small();
  g.find("G2")->decorators.insert(Decorator::kUndeveloped);
  g.add_annotation({AnnotationKind::kMultiplicity, "S1", {"G2"}, Cardinality::parse("1 of *")});
  Summary s = count_summary(g);
  EXPECT_EQ(s.elements, 5u);
  EXPECT_EQ(s.relationships, 4u);
  EXPECT_EQ(s.decorators, 2u);
  EXPECT_EQ(s.placeholders, 3u);
}

TEST(Graph, DepthsAndRoots) {
  GsnGraph g = small();
  DepthMap d = compute_depths(g, true);
  EXPECT_EQ(d.at("G1"), 1);
  EXPECT_EQ(d.at("C1"), 1);
  EXPECT_EQ(d.at("S1"), 2);
  EXPECT_EQ(d.at("Sn1"), 4);
  EXPECT_EQ(g.root(), "G1");
  g.add_element(el("C9", ElementKind::kContext));
  EXPECT_EQ(free_contextual_elements(g), std::vector<std::string>{"C9"});
  EXPECT_EQ(compute_depths(g).at("C9"), 1);
  try {
    compute_depths(g, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnreachableElement);
  }
}

TEST(Graph, CycleDetected) {
  GsnGraph g = small();
  g.add_relationship(RelationKind::kSupportedBy, "G2", {"G1"});
  try {
    compute_depths(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCycleDetected);
  }
}

TEST(Graph, RemoveAndRename) {
  GsnGraph g = small();
  g.rename_element("G2", "G2.1");
  EXPECT_TRUE(g.contains("G2.1"));
  EXPECT_EQ(g.find_relationship(RelationKind::kSupportedBy, "G2.1")->targets.front(), "Sn1");
  g.remove_element("S1");
  EXPECT_EQ(g.find_relationship(RelationKind::kSupportedBy, "G1"), nullptr);
  g.remove_edge(RelationKind::kInContextOf, "G1", "C1");
  EXPECT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(reachable_from(g, "G2.1"), (std::set<std::string>{"G2.1", "Sn1"}));
}

TEST(Graph, InstantiatedCase) {
  GsnGraph g = small();
  EXPECT_FALSE(is_instantiated_case(g));
  g.find("G1")->description = "Drone is safe";
  g.find("Sn1")->description = "report";
  g.find("G1")->has_placeholder = g.find("Sn1")->has_placeholder = false;
  EXPECT_TRUE(is_instantiated_case(g));
  g.find("G2")->decorators.insert(Decorator::kUndeveloped);
  EXPECT_TRUE(is_instantiated_case(g));
  g.find("G2")->decorators.insert(Decorator::kUninstantiated);
  EXPECT_FALSE(is_instantiated_case(g));
}

TEST(Cardinality, ParseAndWellFormed) {
  auto c = Cardinality::parse("1 of *");
  ASSERT_TRUE(c);
  EXPECT_EQ(c->m, 1u);
  EXPECT_FALSE(c->n);
  EXPECT_TRUE(c->well_formed());
  EXPECT_EQ(c->to_string(), "1 of *");
  EXPECT_FALSE(Cardinality::parse("3 of 2")->well_formed());
  EXPECT_FALSE(Cardinality::parse("* of 2")->well_formed());
  EXPECT_FALSE(Cardinality::parse("one of two"));
  EXPECT_EQ(c->upper(16), 16u);
}

TEST(Graph, DepthsMatchWalkOracle) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    GsnGraph g = gsnforge::testing::random_graph(rng);
    DepthMap d = compute_depths(g);
    auto oracle = gsnforge::testing::depths_by_walk(g);
    ASSERT_EQ(d.size(), oracle.size()) << debug_dump(g);
    for (const auto& [id, depth] : oracle) EXPECT_EQ(d.at(id), depth) << id << "\n" << debug_dump(g);
  }
}
