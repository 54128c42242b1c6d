#include <benchmark/benchmark.h>

#include "gsnforge/binding_plan.hpp"
#include "gsnforge/dataset.hpp"
#include "gsnforge/instantiator.hpp"
#include "gsnforge/predicate_codec.hpp"
#include "gsnforge/prose_codec.hpp"
#include "gsnforge/validator.hpp"

using namespace gsnforge;

namespace {

const Dataset& data() {
  static const Dataset ds = Dataset::load(GSNFORGE_BENCH_DATASET);
  return ds;
}

}  // namespace

static void BM_ParsePredicates(benchmark::State& state) {
  const std::string& text = data().system("deepmind").pattern_text;
  for (auto _ : state) benchmark::DoNotOptimize(parse_document(text));
}
BENCHMARK(BM_ParsePredicates);

static void BM_SerializePredicates(benchmark::State& state) {
  GsnGraph g = data().pattern("deepmind");
  for (auto _ : state) benchmark::DoNotOptimize(serialize_predicates(g));
}
BENCHMARK(BM_SerializePredicates);

static void BM_ParseProse(benchmark::State& state) {
  std::string text = data().ground_truth_prose("acas_xu");
  for (auto _ : state) benchmark::DoNotOptimize(parse_prose(text, ProseMode::kLenient));
}
BENCHMARK(BM_ParseProse);

static void BM_RenderProse(benchmark::State& state) {
  GsnGraph g = data().ground_truth("acas_xu");
  for (auto _ : state) benchmark::DoNotOptimize(render_prose(g));
}
BENCHMARK(BM_RenderProse);

static void BM_Validate(benchmark::State& state) {
  GsnGraph g = data().ground_truth("bluerov2");
  for (auto _ : state) benchmark::DoNotOptimize(validate(g, Profile::kCase));
}
BENCHMARK(BM_Validate);

static void BM_InstantiateBlueRov(benchmark::State& state) {
  GsnGraph p = data().pattern("bluerov2");
  BindingPlan plan = parse_plan_json(*data().system("bluerov2").plan_text);
  for (auto _ : state) benchmark::DoNotOptimize(instantiate(p, plan));
}
BENCHMARK(BM_InstantiateBlueRov);

static void BM_InstantiateWide(benchmark::State& state) {
  GsnGraph p = parse_document(R"(Goal (G1, {System} is safe)
Strategy (S1, Argument over each hazard)
Goal (G2, Hazard {h} is mitigated)
Solution (Sn1, Evidence for {h})
SupportedBy (G1, [S1])
SupportedBy (S1, [G2])
SupportedBy (G2, [Sn1])
HasMultiplicity (S1, [G2], 1 of *)
)").graph;
  BindingPlan plan;
  plan.wildcard_cap = 100000;
  plan.counts.push_back({"S1", {"G2"}, static_cast<std::uint32_t>(state.range(0))});
  plan.bindings = {{"G1", {"X"}}, {"G2", {"h"}}, {"Sn1", {"h"}}};
  for (auto _ : state) benchmark::DoNotOptimize(instantiate(p, plan));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_InstantiateWide)->RangeMultiplier(4)->Range(16, 4096)->Complexity();
