#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gsnforge {

// Entries name an annotation by its source and target ids. Ids may be pattern
// ids (applying to every clone) or instance ids such as G3.2; instance ids
// win when both match.

struct CountEntry {
  std::string source;
  std::vector<std::string> targets;
  std::uint32_t count = 0;
};

struct SelectionEntry {
  std::string source;
  std::vector<std::string> targets;
  std::vector<std::string> selected;
};

struct InclusionEntry {
  std::string source;
  std::vector<std::string> targets;
  bool include = true;
};

struct BindingPlan {
  /// element id -> replacement text per placeholder, in order of appearance
  std::map<std::string, std::vector<std::string>> bindings;
  std::vector<CountEntry> counts;
  std::vector<SelectionEntry> selections;
  std::vector<InclusionEntry> inclusions;
  /// UndevelopStantiated element id -> keep it undeveloped
  std::map<std::string, bool> keep_undeveloped;
  /// stands in for `*` upper bounds
  std::uint32_t wildcard_cap = 16;
};

/// JSON schema:
/// {"bindings": {"G1": ["text", ...]},
///  "counts": [{"source": "S1", "targets": ["G3"], "count": 3}],
///  "selections": [{"source": "S2", "targets": ["G4", "G5"], "selected": ["G4"]}],
///  "inclusions": [{"source": "G5", "targets": ["Sn2"], "include": true}],
///  "keep_undeveloped": {"G3.2": true},
///  "wildcard_cap": 16}
/// Every key is optional. Throws InvalidPlan on malformed documents.
BindingPlan parse_plan_json(std::string_view text);
std::string plan_to_json(const BindingPlan& plan);

}  // namespace gsnforge
