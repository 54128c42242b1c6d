#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "gsnforge/binding_plan.hpp"
#include "gsnforge/dataset.hpp"
#include "gsnforge/errors.hpp"
#include "gsnforge/instantiator.hpp"
#include "gsnforge/predicate_codec.hpp"
#include "gsnforge/prose_codec.hpp"
#include "gsnforge/validator.hpp"
#include "oracles.hpp"

using namespace gsnforge;

namespace {

GsnGraph pattern(std::string_view text) { return parse_document(text).graph; }

ErrorCode code_of(const GsnGraph& p, const BindingPlan& plan) {
  try {
    instantiate(p, plan);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "instantiate succeeded";
  return ErrorCode::kIo;
}

const char* kHazards = R"(Goal (G1, {System} is safe)
Strategy (S1, Argument over each hazard)
Goal (G2, Hazard {h} is mitigated)
Solution (Sn1, Test report for {h})
Context (C1, Hazard log)
SupportedBy (G1, [S1])
SupportedBy (S1, [G2])
SupportedBy (G2, [Sn1])
InContextOf (G2, [C1])
HasMultiplicity (S1, [G2], 1 of *)
)";

BindingPlan hazard_plan(std::uint32_t n) {
  BindingPlan plan;
  plan.counts.push_back({"S1", {"G2"}, n});
  plan.bindings["G1"] = {"Rover"};
  plan.bindings["G2"] = {"collision"};
  plan.bindings["Sn1"] = {"collision"};
  return plan;
}

}  // namespace

TEST(Instantiator, ClonesCarrySuffixes) {
  BindingPlan plan = hazard_plan(2);
  plan.bindings["G2.2"] = {"fire"};
  GsnGraph g = instantiate(pattern(kHazards), plan);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_EQ(g.find("G1")->description, "Rover is safe");
  EXPECT_EQ(g.find("G2.1")->description, "Hazard collision is mitigated");
  EXPECT_EQ(g.find("G2.2")->description, "Hazard fire is mitigated");
  EXPECT_NE(g.find("Sn1.2"), nullptr);
  EXPECT_NE(g.find("C1.1"), nullptr);
  EXPECT_TRUE(g.annotations().empty());
  EXPECT_TRUE(is_instantiated_case(g));
  EXPECT_FALSE(has_errors(validate(g, Profile::kCase)));
}

TEST(Instantiator, CountOfOneStillSuffixes) {
  GsnGraph g = instantiate(pattern(kHazards), hazard_plan(1));
  EXPECT_NE(g.find("G2.1"), nullptr);
  EXPECT_EQ(g.find("G2"), nullptr);
}

TEST(Instantiator, Origins) {
  auto o = instance_origins(pattern(kHazards), hazard_plan(3));
  EXPECT_EQ(o.at("G2.3"), "G2");
  EXPECT_EQ(o.at("Sn1.2"), "Sn1");
  EXPECT_EQ(o.at("G1"), "G1");
  EXPECT_EQ(o.size(), 1u + 1u + 3u * 3u);
}

TEST(Instantiator, PlanErrors) {
  GsnGraph p = pattern(kHazards);
  BindingPlan plan = hazard_plan(2);
  plan.counts.clear();
  EXPECT_EQ(code_of(p, plan), ErrorCode::kMissingBinding);
  EXPECT_EQ(code_of(p, hazard_plan(0)), ErrorCode::kCountViolatesLabel);
  plan = hazard_plan(2);
  plan.bindings.erase("Sn1");
  EXPECT_EQ(code_of(p, plan), ErrorCode::kMissingBinding);
  plan = hazard_plan(1);
  plan.bindings["G1"] = {"{nested}"};
  EXPECT_EQ(code_of(p, plan), ErrorCode::kInvalidPlan);
}

TEST(Instantiator, ChoiceAndSelection) {
  GsnGraph p = pattern(R"(Goal (G1, top)
Goal (G2, left)
Goal (G3, right)
SupportedBy (G1, [G2, G3])
HasChoice (G1, [G2, G3], 1 of 2)
)");
  BindingPlan plan;
  EXPECT_EQ(code_of(p, plan), ErrorCode::kMissingBinding);
  plan.selections.push_back({"G1", {"G2", "G3"}, {"G3"}});
  GsnGraph g = instantiate(p, plan);
  EXPECT_EQ(g.find("G2"), nullptr);
  EXPECT_NE(g.find("G3"), nullptr);
  plan.selections[0].selected = {};
  EXPECT_EQ(code_of(p, plan), ErrorCode::kSelectionViolatesLabel);
}

TEST(Instantiator, OptionalDropLeavesStrategyDangling) {
  GsnGraph p = pattern(R"(Goal (G1, top)
Strategy (S1, only route)
Goal (G2, leaf)
SupportedBy (G1, [S1])
SupportedBy (S1, [G2])
IsOptional (S1, [G2])
Undeveloped(G2)
)");
  BindingPlan plan;
  plan.inclusions.push_back({"S1", {"G2"}, false});
  EXPECT_EQ(code_of(p, plan), ErrorCode::kDanglingAfterDrop);
  plan.inclusions[0].include = true;
  EXPECT_EQ(instantiate(p, plan).size(), 3u);
}

TEST(Instantiator, UndevelopStantiatedNeedsDecision) {
  GsnGraph p = pattern(R"(Goal (G1, top)
Goal (G2, mid)
Solution (Sn1, ev)
SupportedBy (G1, [G2])
SupportedBy (G2, [Sn1])
UndevelopStantiated(G2)
)");
  BindingPlan plan;
  EXPECT_EQ(code_of(p, plan), ErrorCode::kUnresolvedUndevelopment);
  plan.keep_undeveloped["G2"] = true;
  GsnGraph kept = instantiate(p, plan);
  EXPECT_TRUE(kept.find("G2")->decorators.contains(Decorator::kUndeveloped));
  EXPECT_EQ(kept.find("Sn1"), nullptr);
  plan.keep_undeveloped["G2"] = false;
  GsnGraph dev = instantiate(p, plan);
  EXPECT_TRUE(dev.find("G2")->decorators.empty());
  EXPECT_NE(dev.find("Sn1"), nullptr);
}

TEST(Instantiator, PlanJsonRoundTrip) {
  Dataset ds = Dataset::load(GSNFORGE_TEST_DATASET);
  BindingPlan plan = parse_plan_json(*ds.system("bluerov2").plan_text);
  EXPECT_EQ(plan.counts.size(), 3u);
  BindingPlan again = parse_plan_json(plan_to_json(plan));
  EXPECT_EQ(plan_to_json(again), plan_to_json(plan));
  try {
    parse_plan_json("{\"counts\": 3}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPlan);
  }
}

TEST(Instantiator, FixturesReproduceGroundTruth) {
  Dataset ds = Dataset::load(GSNFORGE_TEST_DATASET);
  for (const std::string& key : ds.system_keys()) {
    const SystemData& s = ds.system(key);
    ASSERT_TRUE(s.plan_text) << key;
    GsnGraph g = instantiate(ds.pattern(key), parse_plan_json(*s.plan_text));
    StructureDiff d = diff_structure(g, ds.ground_truth(key));
    EXPECT_TRUE(d.empty()) << key;
    EXPECT_EQ(render_prose(g), ds.ground_truth_prose(key)) << key;
  }
}

TEST(StructureDiff, ReportsDifferences) {
  Dataset ds = Dataset::load(GSNFORGE_TEST_DATASET);
  GsnGraph b = ds.ground_truth("acas_xu");
  GsnGraph a = b;
  a.remove_element("Sn4");
  a.find("C5")->kind = ElementKind::kAssumption;
  StructureDiff d = diff_structure(a, b);
  EXPECT_EQ(d.missing, std::vector<std::string>{"Sn4"});
  EXPECT_TRUE(d.extra.empty());
  ASSERT_EQ(d.kind_mismatch.size(), 1u);
  EXPECT_EQ(d.kind_mismatch[0].a_id, "C5");
  EXPECT_EQ(d.net_missing(), 1);
  EXPECT_FALSE(d.missing_edges.empty());
  EXPECT_FALSE(d.kind_counts.empty());
}

TEST(Instantiator, RandomPatternsMatchCloneOracle) {
  std::mt19937 rng(17);
  for (int i = 0; i < 200; ++i) {
    gsnforge::testing::RandomPattern rp = gsnforge::testing::random_multiplicity_pattern(rng);
    gsnforge::testing::CloneCount want = gsnforge::testing::clone_count(rp.pattern, rp.plan);
    GsnGraph g = instantiate(rp.pattern, rp.plan);
    ASSERT_EQ(g.size(), want.elements) << debug_dump(rp.pattern) << plan_to_json(rp.plan);
    ASSERT_EQ(g.edges().size(), want.pairs) << debug_dump(rp.pattern) << plan_to_json(rp.plan);
    ASSERT_TRUE(is_instantiated_case(g));
  }
}
