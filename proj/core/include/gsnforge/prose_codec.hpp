#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gsnforge/errors.hpp"
#include "gsnforge/graph.hpp"

namespace gsnforge {

// Line syntax: `<dashes> <Kind> <Id>[ (tags)]: <description>`, one dash per
// level below the root. Tags: InContextOf, SupportedBy, the decorator names,
// HasPlaceholder, and annotations such as `HasMultiplicity [G3] 1 of *`.

enum class ProseMode { kStrict, kLenient };

enum class AnomalyKind {
  kUnknownElementKind,
  kMissingId,
  kDuplicateId,
  kInconsistentPrefix,
  kOrphanNode,
};

std::string_view to_string(AnomalyKind kind);

struct ProseAnomaly {
  std::size_t line = 0;
  AnomalyKind kind = AnomalyKind::kUnknownElementKind;
  std::string detail;
};

struct ProseParse {
  GsnGraph graph;
  std::vector<ProseAnomaly> anomalies;
};

class ProseParseError : public Error {
 public:
  explicit ProseParseError(std::vector<ProseAnomaly> anomalies);
  const std::vector<ProseAnomaly>& anomalies() const { return anomalies_; }

 private:
  std::vector<ProseAnomaly> anomalies_;
};

/// Strict mode throws ProseParseError on any anomaly. Lenient mode maps
/// Evidence to Solution and Argument/Inference to Strategy, synthesizes X1,
/// X2, ... for missing ids, and records at most one anomaly per line.
/// Whitespace-only input raises EmptyInput in both modes.
ProseParse parse_prose(std::string_view text, ProseMode mode);

/// Pre-order walk from each root in id order, contexts before SupportedBy
/// children; free contextual elements follow at zero dashes. A shared
/// element is repeated at every mention. Throws NotATree on cycles.
std::string render_prose(const GsnGraph& graph);

/// Graphviz digraph with GSN-like shapes; nodes in id order.
std::string render_dot(const GsnGraph& graph);

}  // namespace gsnforge
