#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gsnforge/text.hpp"

namespace gsnforge {

// ---------------------------------------------------------------------------
// Element kinds and decorators
// ---------------------------------------------------------------------------

enum class ElementKind {
  kGoal,
  kStrategy,
  kSolution,
  kContext,
  kAssumption,
  kJustification,
};

inline constexpr ElementKind kAllElementKinds[] = {
    ElementKind::kGoal,    ElementKind::kStrategy,   ElementKind::kSolution,
    ElementKind::kContext, ElementKind::kAssumption, ElementKind::kJustification,
};

std::string_view to_string(ElementKind kind);

/// Exact (case-sensitive) kind name; anything else, e.g. "Evidence", is not a
/// kind.
std::optional<ElementKind> parse_element_kind(std::string_view name);

/// Goals, Strategies and Solutions form the SupportedBy backbone.
bool is_core_kind(ElementKind kind);

/// Contexts, Assumptions and Justifications only appear as InContextOf
/// targets.
bool is_contextual_kind(ElementKind kind);

/// G, S, Sn, C, A, J.
std::string_view conventional_prefix(ElementKind kind);

enum class Decorator {
  kUndeveloped,
  kUninstantiated,
  kUndevelopStantiated,  ///< fusion of the two above, not their sum
};

inline constexpr Decorator kAllDecorators[] = {
    Decorator::kUndeveloped,
    Decorator::kUninstantiated,
    Decorator::kUndevelopStantiated,
};

std::string_view to_string(Decorator decorator);
std::optional<Decorator> parse_decorator(std::string_view name);

/// Legal placement: Undeveloped and UndevelopStantiated only on Goals and
/// Strategies; Uninstantiated anywhere.
bool decorator_allowed_on(Decorator decorator, ElementKind kind);

class DecoratorSet {
 public:
  DecoratorSet() = default;
  DecoratorSet(std::initializer_list<Decorator> decorators);

  bool contains(Decorator d) const { return (bits_ & bit(d)) != 0; }
  void insert(Decorator d) { bits_ |= bit(d); }
  void erase(Decorator d) { bits_ &= static_cast<std::uint8_t>(~bit(d)); }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<Decorator> to_vector() const;

  friend bool operator==(const DecoratorSet&, const DecoratorSet&) = default;

 private:
  static std::uint8_t bit(Decorator d) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(d));
  }
  std::uint8_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Elements, relationships, annotations
// ---------------------------------------------------------------------------

struct Element {
  std::string id;
  ElementKind kind = ElementKind::kGoal;
  std::string description;
  DecoratorSet decorators;
  /// Set from braces in the description or an explicit HasPlaceholder
  /// statement; codecs warn when the two disagree.
  bool has_placeholder = false;

  friend bool operator==(const Element&, const Element&) = default;
};

/// True iff the description holds at least one `{...}` span.
bool description_has_placeholder(std::string_view description);

/// `m of n` where either side may be the wildcard `*`.
struct Cardinality {
  std::optional<std::uint32_t> m;  ///< nullopt means `*`
  std::optional<std::uint32_t> n;  ///< nullopt means `*`

  /// Parses `m of n`; returns nullopt on anything else.
  static std::optional<Cardinality> parse(std::string_view text);
  std::string to_string() const;

  /// n >= 1 (or `*`), m <= n when both numeric, wildcard m needs wildcard n.
  bool well_formed() const;

  /// Lower bound on a chosen count (wildcard m reads as 0).
  std::uint32_t lower() const { return m.value_or(0); }
  /// Upper bound, with `*` replaced by `wildcard_cap`.
  std::uint32_t upper(std::uint32_t wildcard_cap) const {
    return n.value_or(wildcard_cap);
  }

  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

enum class RelationKind { kSupportedBy, kInContextOf };

std::string_view to_string(RelationKind kind);

/// Left/right placement of an InContextOf neighbour; presentation only.
enum class ContextSide { kLeft, kRight };

/// Fan-out relationship `Kind (source, [targets], depth)`.
struct Relationship {
  RelationKind kind = RelationKind::kSupportedBy;
  std::string source;
  std::vector<std::string> targets;
  /// Depth of the source (root = 1); 0 while unknown.
  int depth = 0;
  std::optional<ContextSide> side;
};

enum class AnnotationKind { kChoice, kMultiplicity, kOptional };

std::string_view to_string(AnnotationKind kind);

struct PatternAnnotation {
  AnnotationKind kind = AnnotationKind::kMultiplicity;
  std::string source;
  std::vector<std::string> targets;
  std::optional<Cardinality> label;

  friend bool operator==(const PatternAnnotation&,
                         const PatternAnnotation&) = default;
};

/// One flattened (source, target) relationship pair.
struct Edge {
  RelationKind kind = RelationKind::kSupportedBy;
  std::string source;
  std::string target;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// ---------------------------------------------------------------------------
// GsnGraph
// ---------------------------------------------------------------------------

/// Element/relationship/annotation store for one assurance case or pattern.
///
/// The store does not reject duplicate ids; codecs do, and the validator
/// reports them (R1). Relationships are kept unique per (kind, source):
/// adding targets to an existing pair appends to its target list.
class GsnGraph {
 public:
  Element& add_element(Element element);
  bool contains(std::string_view id) const;
  const Element* find(std::string_view id) const;
  Element* find(std::string_view id);

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  /// Appends `targets` to the (kind, source) relationship, creating it when
  /// absent. Targets already listed are not repeated.
  void add_relationship(RelationKind kind, std::string_view source,
                        const std::vector<std::string>& targets, int depth = 0);
  const std::vector<Relationship>& relationships() const {
    return relationships_;
  }
  std::vector<Relationship>& relationships() { return relationships_; }
  const Relationship* find_relationship(RelationKind kind,
                                        std::string_view source) const;

  void add_annotation(PatternAnnotation annotation);
  const std::vector<PatternAnnotation>& annotations() const {
    return annotations_;
  }
  std::vector<PatternAnnotation>& annotations() { return annotations_; }

  /// Flattened (kind, source, target) pairs in storage order.
  std::vector<Edge> edges() const;

  /// Removes the element and every relationship target, relationship and
  /// annotation that mentions it.
  void remove_element(std::string_view id);

  /// Removes a single (kind, source, target) pair.
  void remove_edge(RelationKind kind, std::string_view source,
                   std::string_view target);

  /// Renames an element and every reference to it.
  void rename_element(std::string_view from, const std::string& to);

  /// The unique root candidate, if there is exactly one.
  std::optional<std::string> root() const;

 private:
  void reindex();

  std::vector<Element> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Relationship> relationships_;
  std::vector<PatternAnnotation> annotations_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

struct Summary {
  std::size_t elements = 0;
  std::size_t relationships = 0;
  std::size_t decorators = 0;
  std::size_t placeholders = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

/// Relationships count once per (source, target) pair; decorators once per
/// element decorator plus once per annotation; placeholders once per `{...}`
/// span (an element flagged by HasPlaceholder without a span counts once).
Summary count_summary(const GsnGraph& graph);

using DepthMap = std::map<std::string, int, text::NaturalLess>;

/// Root depth is 1; children sit one level below their SupportedBy parent;
/// InContextOf neighbours share their source's depth (minimum over sources).
///
/// Non-strict mode places free-standing contextual elements at depth 1 and
/// tolerates several roots. Strict mode requires exactly one root and raises
/// UnreachableElement for free-standing contextual elements.
/// Throws Error(kCycleDetected) when SupportedBy/InContextOf contain a cycle.
DepthMap compute_depths(const GsnGraph& graph, bool strict = false);

/// Rewrites every relationship depth from compute_depths; leaves them 0 when
/// the graph is cyclic.
void assign_depths(GsnGraph& graph);

/// Core elements (Goal/Strategy/Solution) without an incoming relationship,
/// in natural id order.
std::vector<std::string> root_candidates(const GsnGraph& graph);

/// Contextual elements with no InContextOf source, in natural id order.
std::vector<std::string> free_contextual_elements(const GsnGraph& graph);

/// True iff there are no annotations, no Uninstantiated/UndevelopStantiated
/// decorators and no placeholders. Undeveloped alone is allowed.
bool is_instantiated_case(const GsnGraph& graph);

/// `id` plus everything reachable from it over both relationship kinds.
std::set<std::string> reachable_from(const GsnGraph& graph,
                                     std::string_view id);

/// Structural equality modulo storage order: elements compared by id,
/// relationships per (kind, source) with target order, annotations as a
/// multiset. Context side tags are ignored.
bool equivalent(const GsnGraph& a, const GsnGraph& b);

/// Deterministic multi-line dump used in test failure messages.
std::string debug_dump(const GsnGraph& graph);

}  // namespace gsnforge
