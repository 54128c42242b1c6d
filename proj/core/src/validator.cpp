#include "gsnforge/validator.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gsnforge/errors.hpp"

namespace gsnforge {

std::optional<Profile> parse_profile(std::string_view name) {
  if (name == "pattern") return Profile::kPattern;
  if (name == "case") return Profile::kCase;
  if (name == "either") return Profile::kEither;
  return std::nullopt;
}

std::string_view to_string(Profile profile) {
  switch (profile) {
    case Profile::kPattern: return "pattern";
    case Profile::kCase: return "case";
    case Profile::kEither: return "either";
  }
  return "?";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

const std::vector<RuleInfo>& rule_registry() {
  static const std::vector<RuleInfo> rules = {
      {"R1", "ids are unique and every reference resolves"},
      {"R2", "SupportedBy targets: Strategy to Goal only, Goal to Goal/Strategy/Solution"},
      {"R3", "only Goals and Strategies have outgoing relationships"},
      {"R4", "InContextOf targets are Context, Assumption or Justification"},
      {"R5", "SupportedBy/InContextOf acyclic with a single root Goal"},
      {"R6", "relationship depths agree with computed depths"},
      {"R7", "placeholder braces well formed and consistent with the flag"},
      {"R8", "cardinality labels well formed"},
      {"R9", "annotations decorate existing relationships"},
      {"R10", "decorators legal for the element kind"},
      {"R11", "profile purity"},
  };
  return rules;
}

namespace {

class Collector {
 public:
  void add(std::string_view rule, Severity sev, std::string subject,
           std::string message) {
    current_.push_back(
        Diagnostic{std::string(rule), sev, std::move(subject), std::move(message)});
  }
  void flush() {
    std::stable_sort(current_.begin(), current_.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                       return text::natural_less(a.subject, b.subject);
                     });
    out_.insert(out_.end(), current_.begin(), current_.end());
    current_.clear();
  }
  std::vector<Diagnostic> take() {
    flush();
    return std::move(out_);
  }

 private:
  std::vector<Diagnostic> current_;
  std::vector<Diagnostic> out_;
};

std::string edge_subject(RelationKind kind, std::string_view s, std::string_view t) {
  return std::string(s) + " " + std::string(to_string(kind)) + " " + std::string(t);
}

}  // namespace

std::vector<Diagnostic> validate(const GsnGraph& g, Profile profile) {
  Collector c;
  constexpr Severity E = Severity::kError;
  constexpr Severity W = Severity::kWarning;

  // R1
  std::map<std::string, std::size_t> seen;
  for (const Element& e : g.elements()) {
    if (++seen[e.id] == 2) c.add("R1", E, e.id, "duplicate id '" + e.id + "'");
  }
  for (const Relationship& r : g.relationships()) {
    if (!g.contains(r.source)) {
      c.add("R1", E, r.source, "relationship source '" + r.source + "' is undeclared");
    }
    for (const std::string& t : r.targets) {
      if (!g.contains(t)) {
        c.add("R1", E, t, "relationship target '" + t + "' is undeclared");
      }
    }
  }
  for (const PatternAnnotation& a : g.annotations()) {
    if (!g.contains(a.source)) {
      c.add("R1", E, a.source, "annotation source '" + a.source + "' is undeclared");
    }
    for (const std::string& t : a.targets) {
      if (!g.contains(t)) {
        c.add("R1", E, t, "annotation target '" + t + "' is undeclared");
      }
    }
  }
  c.flush();

  // R2
  for (const Edge& e : g.edges()) {
    if (e.kind != RelationKind::kSupportedBy) continue;
    const Element* s = g.find(e.source);
    const Element* t = g.find(e.target);
    if (!s || !t) continue;
    if (s->kind == ElementKind::kStrategy && t->kind != ElementKind::kGoal) {
      c.add("R2", E, edge_subject(e.kind, e.source, e.target),
            "a Strategy can only be supported by Goals");
    } else if (s->kind == ElementKind::kGoal && !is_core_kind(t->kind)) {
      c.add("R2", E, edge_subject(e.kind, e.source, e.target),
            "a Goal is supported by Goals, Strategies or Solutions");
    }
  }
  c.flush();

  // R3
  for (const Relationship& r : g.relationships()) {
    const Element* s = g.find(r.source);
    if (!s) continue;
    if (s->kind != ElementKind::kGoal && s->kind != ElementKind::kStrategy) {
      c.add("R3", E, r.source,
            std::string(to_string(s->kind)) + " '" + r.source +
                "' has an outgoing " + std::string(to_string(r.kind)));
    }
  }
  c.flush();

  // R4
  for (const Edge& e : g.edges()) {
    if (e.kind != RelationKind::kInContextOf) continue;
    const Element* t = g.find(e.target);
    if (t && !is_contextual_kind(t->kind)) {
      c.add("R4", E, edge_subject(e.kind, e.source, e.target),
            "InContextOf target must be a Context, Assumption or Justification");
    }
  }
  c.flush();

  // R5
  bool acyclic = true;
  try {
    compute_depths(g, false);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kCycleDetected) {
      acyclic = false;
      c.add("R5", E, "graph", err.what());
    }
  }
  if (acyclic && !g.empty()) {
    Severity root_sev = profile == Profile::kCase ? E : W;
    auto roots = root_candidates(g);
    if (roots.empty()) {
      c.add("R5", root_sev, "graph", "no root element");
    } else if (roots.size() > 1) {
      std::string list;
      for (const auto& r : roots) list += (list.empty() ? "" : ", ") + r;
      c.add("R5", root_sev, "graph", "multiple roots: " + list);
    } else if (g.find(roots.front())->kind != ElementKind::kGoal) {
      c.add("R5", root_sev, roots.front(), "the root must be a Goal");
    }
    for (const std::string& id : free_contextual_elements(g)) {
      c.add("R5", W, id, "contextual element '" + id + "' is not attached");
    }
  }
  c.flush();

  // R6
  if (acyclic) {
    DepthMap depths = compute_depths(g, false);
    for (const Relationship& r : g.relationships()) {
      auto it = depths.find(r.source);
      if (it == depths.end()) continue;
      if (r.depth != it->second) {
        c.add("R6", E, edge_subject(r.kind, r.source, r.targets.front()),
              "depth " + std::to_string(r.depth) + " but '" + r.source +
                  "' sits at depth " + std::to_string(it->second));
      }
    }
  }
  c.flush();

  // R7
  for (const Element& e : g.elements()) {
    if (text::has_malformed_braces(e.description)) {
      c.add("R7", E, e.id, "unbalanced or nested placeholder braces");
      continue;
    }
    bool spans = description_has_placeholder(e.description);
    if (e.has_placeholder != spans) {
      c.add("R7", W, e.id,
            spans ? "placeholder span without HasPlaceholder"
                  : "HasPlaceholder without a {} span");
    }
  }
  c.flush();

  // R8
  for (const PatternAnnotation& a : g.annotations()) {
    if (a.label && !a.label->well_formed()) {
      c.add("R8", E, a.source, "ill-formed cardinality '" + a.label->to_string() + "'");
    }
  }
  c.flush();

  // R9
  for (const PatternAnnotation& a : g.annotations()) {
    for (const std::string& t : a.targets) {
      bool found = false;
      for (const Relationship& r : g.relationships()) {
        if (r.source == a.source &&
            std::find(r.targets.begin(), r.targets.end(), t) != r.targets.end()) {
          found = true;
          break;
        }
      }
      if (!found) {
        c.add("R9", E, a.source + " " + t,
              std::string(to_string(a.kind)) + " pair (" + a.source + ", " + t +
                  ") has no relationship");
      }
    }
  }
  c.flush();

  // R10
  for (const Element& e : g.elements()) {
    for (Decorator d : e.decorators.to_vector()) {
      if (!decorator_allowed_on(d, e.kind)) {
        c.add("R10", E, e.id,
              std::string(to_string(d)) + " is not allowed on a " +
                  std::string(to_string(e.kind)));
      }
    }
    if (e.decorators.contains(Decorator::kUndevelopStantiated) &&
        (e.decorators.contains(Decorator::kUndeveloped) ||
         e.decorators.contains(Decorator::kUninstantiated))) {
      c.add("R10", E, e.id, "UndevelopStantiated combined with its parts");
    }
    if (e.decorators.contains(Decorator::kUndeveloped) &&
        g.find_relationship(RelationKind::kSupportedBy, e.id) != nullptr) {
      c.add("R10", W, e.id, "Undeveloped element has SupportedBy children");
    }
  }
  c.flush();

  // R11
  if (profile == Profile::kCase) {
    for (const PatternAnnotation& a : g.annotations()) {
      c.add("R11", E, a.source,
            std::string(to_string(a.kind)) + " annotation in an assurance case");
    }
    for (const Element& e : g.elements()) {
      if (e.decorators.contains(Decorator::kUninstantiated) ||
          e.decorators.contains(Decorator::kUndevelopStantiated)) {
        c.add("R11", E, e.id, "pattern decorator in an assurance case");
      } else if (e.has_placeholder || description_has_placeholder(e.description)) {
        c.add("R11", E, e.id, "placeholder in an assurance case");
      }
    }
  } else if (profile == Profile::kPattern && is_instantiated_case(g)) {
    c.add("R11", E, "graph", "a pattern needs annotations, pattern decorators or placeholders");
  }
  return c.take();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return error_count(diagnostics) > 0;
}

std::size_t error_count(const std::vector<Diagnostic>& diagnostics) {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(),
                    [](const Diagnostic& d) { return d.severity == Severity::kError; }));
}

}  // namespace gsnforge
