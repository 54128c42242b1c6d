#include "gsnforge/prompt_engine.hpp"

#include "gsnforge/errors.hpp"
#include "gsnforge/predicate_codec.hpp"
#include "gsnforge/prose_codec.hpp"

namespace gsnforge {

const std::string_view kBaselineSystemPrompt =
    "You are an assistant who assists in developing an assurance case in a tree structure "
    "using Goal Structuring Notation (GSN). Your role is to create an assurance case.";

namespace {

constexpr std::string_view kSePreamble =
    "You turn assurance case patterns written in Goal Structuring Notation (GSN) into "
    "concrete assurance cases for one target system. Use only the element kinds Goal, "
    "Strategy, Solution, Context, Assumption and Justification, and derive every element "
    "identifier from the pattern.";

std::string trimmed(std::string_view s) { return std::string(text::trim(s)); }

void append_block(std::string& out, const BlockMarkers& m, std::string_view body) {
  out += "\n\n";
  out += m.open;
  out += "\n";
  out += trimmed(body);
  out += "\n";
  out += m.close;
}

std::string_view article(std::string_view word) {
  if (!word.empty() && std::string_view("aeiouAEIOU").find(word.front()) != std::string_view::npos) {
    return "an";
  }
  return "a";
}

}  // namespace

const std::vector<ExperimentConfig>& experiment_matrix() {
  //                                       example context domain predicates
  static const std::vector<ExperimentConfig> matrix = {
      {"E1", false, false, false, false},
      {"E2", true, true, true, true},
      {"E3", false, true, true, true},
      {"E4", true, true, false, true},
      {"E5", false, true, false, true},
      {"E6", true, false, true, true},
      {"E7", false, false, true, true},
      {"E8", true, false, false, true},
      {"E9", false, false, false, true},
  };
  return matrix;
}

std::optional<ExperimentConfig> find_experiment(std::string_view id) {
  for (const ExperimentConfig& c : experiment_matrix()) {
    if (c.id == id) return c;
  }
  return std::nullopt;
}

PromptBundle build_prompts(const ExperimentConfig& config, const KnowledgeBundle& bundle,
                           const GsnGraph& pattern, const SystemData& target) {
  if (config.use_example != bundle.example.has_value()) {
    throw Error(ErrorCode::kConfigBundleMismatch,
                config.id + (config.use_example ? " needs" : " must not carry") +
                    " a one-shot example");
  }
  if (config.use_domain != bundle.domain_text.has_value()) {
    throw Error(ErrorCode::kConfigBundleMismatch,
                config.id + (config.use_domain ? " needs" : " must not carry") +
                    " domain information");
  }

  PromptBundle out;
  out.config = config;
  out.system_name = target.display_name;

  if (!config.uses_knowledge()) {
    out.system = std::string(kBaselineSystemPrompt);
    out.user = "Create " + std::string(article(target.case_kind)) + " " + target.case_kind +
               " case for " + target.display_name +
               " and display it in a hierarchical tree format using dashes (-) to denote "
               "different levels.";
    return out;
  }

  std::string sys(kSePreamble);
  if (config.use_predicates) append_block(sys, kRulesBlock, bundle.predicate_rules_text);
  if (config.use_context) append_block(sys, kContextBlock, bundle.context_text);
  if (config.use_domain) append_block(sys, kDomainBlock, *bundle.domain_text);
  if (config.use_example) {
    const OneShotExample& ex = *bundle.example;
    std::string body = "Pattern for " + ex.system_name + ":\n" + trimmed(ex.pattern_predicates) +
                       "\n\nAssurance case instantiated from it:\n" +
                       trimmed(ex.ground_truth_prose);
    append_block(sys, kExampleBlock, body);
  }
  out.system = std::move(sys);

  out.user = "Instantiate the following " + target.case_kind + " assurance case pattern for " +
             target.display_name + ".\n\n" + trimmed(serialize_predicates(pattern)) +
             "\n\nWork through the pattern decorators and placeholders one at a time, then "
             "output only the finished assurance case as a hierarchical tree: one element per "
             "line written as `<Kind> <Id>: <description>`, with one leading dash (-) per "
             "level below the root.";
  return out;
}

KnowledgeBundle make_bundle(const Dataset& dataset, const ExperimentConfig& config,
                            const std::string& target_key,
                            const std::optional<std::string>& example_key) {
  KnowledgeBundle b;
  b.context_text = dataset.context_text();
  b.predicate_rules_text = dataset.predicate_rules_text();
  if (config.use_domain) b.domain_text = dataset.system(target_key).domain_text;
  if (config.use_example) {
    if (!example_key) {
      throw Error(ErrorCode::kConfigBundleMismatch, config.id + " needs an example system");
    }
    OneShotExample ex;
    ex.system_name = dataset.system(*example_key).display_name;
    ex.pattern_predicates = serialize_predicates(dataset.pattern(*example_key));
    ex.ground_truth_prose = dataset.ground_truth_prose(*example_key);
    b.example = std::move(ex);
  }
  return b;
}

PromptBundle build_prompts(const Dataset& dataset, const ExperimentConfig& config,
                           const std::string& target_key,
                           const std::optional<std::string>& example_key) {
  KnowledgeBundle b = make_bundle(dataset, config, target_key, example_key);
  return build_prompts(config, b, dataset.pattern(target_key), dataset.system(target_key));
}

}  // namespace gsnforge
