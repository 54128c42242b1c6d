#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsnforge/dataset.hpp"
#include "gsnforge/graph.hpp"

namespace gsnforge {

struct ExperimentConfig {
  std::string id;
  bool use_example = false;
  bool use_context = false;
  bool use_domain = false;
  bool use_predicates = false;

  bool uses_knowledge() const {
    return use_example || use_context || use_domain || use_predicates;
  }
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// E1 ... E9.
const std::vector<ExperimentConfig>& experiment_matrix();
std::optional<ExperimentConfig> find_experiment(std::string_view id);

struct OneShotExample {
  std::string system_name;
  std::string pattern_predicates;
  std::string ground_truth_prose;
};

struct KnowledgeBundle {
  std::string context_text;
  std::optional<std::string> domain_text;
  std::optional<OneShotExample> example;
  std::string predicate_rules_text;
};

struct PromptBundle {
  std::string system;
  std::string user;
  ExperimentConfig config;
  std::string system_name;
};

/// Block markers; each block is `<open>\n<text>\n<close>`.
struct BlockMarkers {
  std::string_view open;
  std::string_view close;
};
inline constexpr BlockMarkers kRulesBlock{"@Predicate_Rules", "@End_Predicate_Rules"};
inline constexpr BlockMarkers kContextBlock{"@Context", "@End_Context"};
inline constexpr BlockMarkers kDomainBlock{"@Domain", "@End_Domain"};
inline constexpr BlockMarkers kExampleBlock{"@Example", "@End_Example"};

extern const std::string_view kBaselineSystemPrompt;

/// Throws ConfigBundleMismatch when the example or domain presence disagrees
/// with the config.
PromptBundle build_prompts(const ExperimentConfig& config, const KnowledgeBundle& bundle,
                           const GsnGraph& pattern, const SystemData& target);

/// Gathers the blocks `config` asks for; `example_key` names the one-shot
/// system and is required iff the config uses an example.
KnowledgeBundle make_bundle(const Dataset& dataset, const ExperimentConfig& config,
                            const std::string& target_key,
                            const std::optional<std::string>& example_key);

PromptBundle build_prompts(const Dataset& dataset, const ExperimentConfig& config,
                           const std::string& target_key,
                           const std::optional<std::string>& example_key);

}  // namespace gsnforge
