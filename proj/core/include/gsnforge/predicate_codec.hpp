#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsnforge/graph.hpp"

namespace gsnforge {

enum class PredicateHead {
  kGoal,
  kStrategy,
  kSolution,
  kContext,
  kAssumption,
  kJustification,
  kUndeveloped,
  kUninstantiated,
  kUndevelopStantiated,
  kHasPlaceholder,
  kHasChoice,
  kHasMultiplicity,
  kIsOptional,
  kInContextOf,
  kSupportedBy,
};

/// Accepts both `IncontextOf` and `InContextOf`.
std::optional<PredicateHead> parse_predicate_head(std::string_view name);
std::string_view to_string(PredicateHead head);

struct PredicateStatement {
  PredicateHead head = PredicateHead::kGoal;
  std::string subject;
  std::string description;
  std::vector<std::string> targets;
  std::optional<int> depth;
  std::optional<ContextSide> side;
  std::optional<Cardinality> label;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct PredicateDocument {
  std::vector<PredicateStatement> statements;
};

struct CodecWarning {
  std::size_t line = 0;
  std::string message;
};

struct PredicateParse {
  GsnGraph graph;
  std::vector<CodecWarning> warnings;
};

/// Syntax only: SyntaxError, UnknownPredicate, ArityMismatch,
/// MalformedCardinality (all SourceError).
PredicateDocument parse_statements(std::string_view text);

/// Materializes statements; raises DuplicateId and DanglingReference.
/// Missing depths are filled in from compute_depths.
PredicateParse build_graph(const PredicateDocument& document);

PredicateParse parse_document(std::string_view text);

/// Canonical text: elements by depth then id, decorators, HasPlaceholder
/// flags, relationships by depth, annotations.
std::string serialize_predicates(const GsnGraph& graph);

}  // namespace gsnforge
