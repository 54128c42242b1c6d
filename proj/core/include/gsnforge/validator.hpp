#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsnforge/graph.hpp"

namespace gsnforge {

enum class Profile { kPattern, kCase, kEither };

std::optional<Profile> parse_profile(std::string_view name);
std::string_view to_string(Profile profile);

enum class Severity { kError, kWarning };

std::string_view to_string(Severity severity);

struct Diagnostic {
  std::string rule;  ///< "R1" ... "R11"
  Severity severity = Severity::kError;
  std::string subject;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct RuleInfo {
  std::string_view id;
  std::string_view summary;
};

/// R1 ... R11 in evaluation order.
const std::vector<RuleInfo>& rule_registry();

/// Diagnostics in rule order, then subject order. Empty means accepted.
std::vector<Diagnostic> validate(const GsnGraph& graph, Profile profile);

bool has_errors(const std::vector<Diagnostic>& diagnostics);
std::size_t error_count(const std::vector<Diagnostic>& diagnostics);

}  // namespace gsnforge
