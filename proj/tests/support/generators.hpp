#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "gsnforge/binding_plan.hpp"
#include "gsnforge/graph.hpp"

namespace gsnforge::testing {

struct GraphShape {
  bool pattern = true;  ///< decorators, annotations and placeholders
  int max_core = 14;
  double shared_context = 0.15;
  double free_context = 0.1;
};

/// A random graph that the validator accepts (no errors) under the matching
/// profile. Ids follow the conventional prefixes, descriptions are trimmed.
GsnGraph random_graph(std::mt19937& rng, const GraphShape& shape = {});

struct RandomPattern {
  GsnGraph pattern;
  BindingPlan plan;
};

/// Tree-shaped pattern whose only annotations are multiplicities, with a
/// plan that fixes every count and binds every placeholder by pattern id.
RandomPattern random_multiplicity_pattern(std::mt19937& rng);

std::string random_sentence(std::mt19937& rng, int min_words, int max_words);

/// Texts over a small alphabet (ASCII, Unicode dashes and spaces) for metric
/// property tests.
std::string random_text(std::mt19937& rng, int max_len);

}  // namespace gsnforge::testing
