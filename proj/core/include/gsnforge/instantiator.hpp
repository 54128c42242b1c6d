#pragma once

#include <map>
#include <string>
#include <vector>

#include "gsnforge/binding_plan.hpp"
#include "gsnforge/graph.hpp"

namespace gsnforge {

/// Turns a pattern into an assurance case:
///  1. multiplicity expansion, outermost annotation first; clone k of a
///     target subtree appends `.k` to every id in it (G3 -> G3.1, A1.1 -> A1.1.2)
///  2. choice resolution
///  3. optional inclusion
///  4. UndevelopStantiated resolution; kept instances become Undeveloped and
///     lose their SupportedBy descendants
///  5. placeholder substitution
///  6. annotations and Uninstantiated decorators stripped, depths recomputed
/// Dropped branches take only their exclusive descendants with them.
///
/// Errors: MissingBinding, CountViolatesLabel, SelectionViolatesLabel,
/// UnresolvedUndevelopment, DanglingAfterDrop (a Strategy left without
/// support), InvalidPlan.
GsnGraph instantiate(const GsnGraph& pattern, const BindingPlan& plan);

/// Instance id -> originating pattern id for every element `instantiate`
/// would produce, without substituting placeholders. Useful for writing
/// plans.
std::map<std::string, std::string> instance_origins(const GsnGraph& pattern,
                                                    const BindingPlan& plan);

struct KindMismatch {
  std::string a_id;
  std::string b_id;
  ElementKind a_kind = ElementKind::kGoal;
  ElementKind b_kind = ElementKind::kGoal;
};

struct DegreeMismatch {
  std::string a_id;
  std::string b_id;
  RelationKind kind = RelationKind::kSupportedBy;
  std::size_t a_degree = 0;
  std::size_t b_degree = 0;
};

struct KindCountDelta {
  ElementKind kind = ElementKind::kGoal;
  long a_count = 0;
  long b_count = 0;
};

/// diff_structure(a, b): `missing` are elements of b with no partner in a,
/// `extra` elements of a with no partner in b.
struct StructureDiff {
  std::vector<std::string> missing;
  std::vector<std::string> extra;
  std::vector<KindMismatch> kind_mismatch;
  std::vector<DegreeMismatch> degree_mismatch;
  std::vector<Edge> missing_edges;  ///< in b's ids
  std::vector<Edge> extra_edges;    ///< in a's ids
  std::vector<KindCountDelta> kind_counts;  ///< only kinds whose counts differ

  bool empty() const {
    return missing.empty() && extra.empty() && kind_mismatch.empty() &&
           degree_mismatch.empty() && missing_edges.empty() && extra_edges.empty();
  }
  long net_missing() const {
    return static_cast<long>(missing.size()) - static_cast<long>(extra.size());
  }
};

/// Greedy alignment: identical ids first, then remaining elements of the same
/// kind in id order.
StructureDiff diff_structure(const GsnGraph& a, const GsnGraph& b);

}  // namespace gsnforge
