#include "gsnforge/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <tuple>

#include "gsnforge/errors.hpp"

namespace gsnforge {

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::kGoal: return "Goal";
    case ElementKind::kStrategy: return "Strategy";
    case ElementKind::kSolution: return "Solution";
    case ElementKind::kContext: return "Context";
    case ElementKind::kAssumption: return "Assumption";
    case ElementKind::kJustification: return "Justification";
  }
  return "?";
}

std::optional<ElementKind> parse_element_kind(std::string_view name) {
  for (ElementKind kind : kAllElementKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

bool is_core_kind(ElementKind kind) {
  return kind == ElementKind::kGoal || kind == ElementKind::kStrategy ||
         kind == ElementKind::kSolution;
}

bool is_contextual_kind(ElementKind kind) { return !is_core_kind(kind); }

std::string_view conventional_prefix(ElementKind kind) {
  switch (kind) {
    case ElementKind::kGoal: return "G";
    case ElementKind::kStrategy: return "S";
    case ElementKind::kSolution: return "Sn";
    case ElementKind::kContext: return "C";
    case ElementKind::kAssumption: return "A";
    case ElementKind::kJustification: return "J";
  }
  return "";
}

std::string_view to_string(Decorator decorator) {
  switch (decorator) {
    case Decorator::kUndeveloped: return "Undeveloped";
    case Decorator::kUninstantiated: return "Uninstantiated";
    case Decorator::kUndevelopStantiated: return "UndevelopStantiated";
  }
  return "?";
}

std::optional<Decorator> parse_decorator(std::string_view name) {
  for (Decorator d : kAllDecorators) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

bool decorator_allowed_on(Decorator decorator, ElementKind kind) {
  if (decorator == Decorator::kUninstantiated) return true;
  return kind == ElementKind::kGoal || kind == ElementKind::kStrategy;
}

DecoratorSet::DecoratorSet(std::initializer_list<Decorator> decorators) {
  for (Decorator d : decorators) insert(d);
}

std::size_t DecoratorSet::size() const {
  std::size_t n = 0;
  for (Decorator d : kAllDecorators) n += contains(d) ? 1 : 0;
  return n;
}

std::vector<Decorator> DecoratorSet::to_vector() const {
  std::vector<Decorator> out;
  for (Decorator d : kAllDecorators) {
    if (contains(d)) out.push_back(d);
  }
  return out;
}

bool description_has_placeholder(std::string_view description) {
  return !text::placeholder_spans(description).empty();
}

// ---------------------------------------------------------------------------
// Cardinality
// ---------------------------------------------------------------------------

namespace {

std::optional<std::optional<std::uint32_t>> parse_bound(std::string_view s) {
  if (s == "*") return std::optional<std::uint32_t>{};
  if (s.empty() || s.size() > 9) return std::nullopt;
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return std::optional<std::uint32_t>{value};
}

}  // namespace

std::optional<Cardinality> Cardinality::parse(std::string_view raw) {
  std::string_view s = text::trim(raw);
  // Split into exactly three whitespace-separated tokens: m "of" n.
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) tokens.push_back(s.substr(start, i - start));
  }
  if (tokens.size() != 3 || tokens[1] != "of") return std::nullopt;
  auto m = parse_bound(tokens[0]);
  auto n = parse_bound(tokens[2]);
  if (!m || !n) return std::nullopt;
  return Cardinality{*m, *n};
}

std::string Cardinality::to_string() const {
  std::string out = m ? std::to_string(*m) : "*";
  out += " of ";
  out += n ? std::to_string(*n) : "*";
  return out;
}

bool Cardinality::well_formed() const {
  if (n && *n == 0) return false;
  if (!m && n) return false;
  if (m && n && *m > *n) return false;
  return true;
}

std::string_view to_string(RelationKind kind) {
  return kind == RelationKind::kSupportedBy ? "SupportedBy" : "InContextOf";
}

std::string_view to_string(AnnotationKind kind) {
  switch (kind) {
    case AnnotationKind::kChoice: return "HasChoice";
    case AnnotationKind::kMultiplicity: return "HasMultiplicity";
    case AnnotationKind::kOptional: return "IsOptional";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// GsnGraph
// ---------------------------------------------------------------------------

Element& GsnGraph::add_element(Element element) {
  elements_.push_back(std::move(element));
  index_.try_emplace(elements_.back().id, elements_.size() - 1);
  return elements_.back();
}

bool GsnGraph::contains(std::string_view id) const {
  return index_.find(std::string(id)) != index_.end();
}

const Element* GsnGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &elements_[it->second];
}

Element* GsnGraph::find(std::string_view id) {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &elements_[it->second];
}

void GsnGraph::add_relationship(RelationKind kind, std::string_view source,
                                const std::vector<std::string>& targets,
                                int depth) {
  Relationship* rel = nullptr;
  for (Relationship& r : relationships_) {
    if (r.kind == kind && r.source == source) {
      rel = &r;
      break;
    }
  }
  if (rel == nullptr) {
    relationships_.push_back(Relationship{kind, std::string(source), {}, depth,
                                          std::nullopt});
    rel = &relationships_.back();
  } else if (rel->depth == 0) {
    rel->depth = depth;
  }
  for (const std::string& t : targets) {
    if (std::find(rel->targets.begin(), rel->targets.end(), t) ==
        rel->targets.end()) {
      rel->targets.push_back(t);
    }
  }
}

const Relationship* GsnGraph::find_relationship(RelationKind kind,
                                                std::string_view source) const {
  for (const Relationship& r : relationships_) {
    if (r.kind == kind && r.source == source) return &r;
  }
  return nullptr;
}

void GsnGraph::add_annotation(PatternAnnotation annotation) {
  annotations_.push_back(std::move(annotation));
}

std::vector<Edge> GsnGraph::edges() const {
  std::vector<Edge> out;
  for (const Relationship& r : relationships_) {
    for (const std::string& t : r.targets) {
      out.push_back(Edge{r.kind, r.source, t});
    }
  }
  return out;
}

void GsnGraph::remove_element(std::string_view id) {
  elements_.erase(std::remove_if(elements_.begin(), elements_.end(),
                                 [&](const Element& e) { return e.id == id; }),
                  elements_.end());
  for (Relationship& r : relationships_) {
    r.targets.erase(std::remove(r.targets.begin(), r.targets.end(), id),
                    r.targets.end());
  }
  relationships_.erase(
      std::remove_if(relationships_.begin(), relationships_.end(),
                     [&](const Relationship& r) {
                       return r.source == id || r.targets.empty();
                     }),
      relationships_.end());
  for (PatternAnnotation& a : annotations_) {
    a.targets.erase(std::remove(a.targets.begin(), a.targets.end(), id),
                    a.targets.end());
  }
  annotations_.erase(
      std::remove_if(annotations_.begin(), annotations_.end(),
                     [&](const PatternAnnotation& a) {
                       return a.source == id || a.targets.empty();
                     }),
      annotations_.end());
  reindex();
}

void GsnGraph::remove_edge(RelationKind kind, std::string_view source,
                           std::string_view target) {
  for (Relationship& r : relationships_) {
    if (r.kind == kind && r.source == source) {
      r.targets.erase(std::remove(r.targets.begin(), r.targets.end(), target),
                      r.targets.end());
    }
  }
  relationships_.erase(
      std::remove_if(relationships_.begin(), relationships_.end(),
                     [](const Relationship& r) { return r.targets.empty(); }),
      relationships_.end());
}

void GsnGraph::rename_element(std::string_view from, const std::string& to) {
  for (Element& e : elements_) {
    if (e.id == from) e.id = to;
  }
  auto rename = [&](std::string& s) {
    if (s == from) s = to;
  };
  for (Relationship& r : relationships_) {
    rename(r.source);
    for (std::string& t : r.targets) rename(t);
  }
  for (PatternAnnotation& a : annotations_) {
    rename(a.source);
    for (std::string& t : a.targets) rename(t);
  }
  reindex();
}

std::optional<std::string> GsnGraph::root() const {
  auto roots = root_candidates(*this);
  if (roots.size() == 1) return roots.front();
  return std::nullopt;
}

void GsnGraph::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    index_.try_emplace(elements_[i].id, i);
  }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Summary count_summary(const GsnGraph& graph) {
  Summary s;
  s.elements = graph.size();
  for (const Relationship& r : graph.relationships()) {
    s.relationships += r.targets.size();
  }
  for (const Element& e : graph.elements()) {
    s.decorators += e.decorators.size();
    std::size_t spans = text::placeholder_spans(e.description).size();
    if (spans == 0 && e.has_placeholder) spans = 1;
    s.placeholders += spans;
  }
  s.decorators += graph.annotations().size();
  return s;
}

namespace {

struct Adjacency {
  // id -> (target, weight) where weight is 1 for SupportedBy, 0 for context.
  std::unordered_map<std::string, std::vector<std::pair<std::string, int>>>
      out;
  std::unordered_map<std::string, std::size_t> in_degree;
};

Adjacency build_adjacency(const GsnGraph& graph) {
  Adjacency adj;
  for (const Element& e : graph.elements()) {
    adj.out.try_emplace(e.id);
    adj.in_degree.try_emplace(e.id, 0);
  }
  for (const Relationship& r : graph.relationships()) {
    if (!graph.contains(r.source)) continue;
    for (const std::string& t : r.targets) {
      if (!graph.contains(t)) continue;
      adj.out[r.source].emplace_back(
          t, r.kind == RelationKind::kSupportedBy ? 1 : 0);
      ++adj.in_degree[t];
    }
  }
  return adj;
}

void check_acyclic(const GsnGraph& graph, const Adjacency& adj) {
  // Iterative three-colour DFS.
  std::unordered_map<std::string, int> colour;
  for (const Element& e : graph.elements()) {
    if (colour[e.id] != 0) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{e.id, 0}};
    colour[e.id] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& succ = adj.out.at(node);
      if (next < succ.size()) {
        const std::string& t = succ[next++].first;
        int c = colour[t];
        if (c == 1) {
          throw Error(ErrorCode::kCycleDetected,
                      "relationship cycle through '" + t + "'");
        }
        if (c == 0) {
          colour[t] = 1;
          stack.emplace_back(t, 0);
        }
      } else {
        colour[node] = 2;
        stack.pop_back();
      }
    }
  }
}

void relax_from(const Adjacency& adj, std::deque<std::string>& queue,
                std::unordered_map<std::string, int>& depth) {
  // 0-1 BFS: context edges keep the depth, SupportedBy edges add one.
  while (!queue.empty()) {
    std::string node = queue.front();
    queue.pop_front();
    int d = depth.at(node);
    for (const auto& [t, w] : adj.out.at(node)) {
      int nd = d + w;
      auto it = depth.find(t);
      if (it == depth.end() || nd < it->second) {
        depth[t] = nd;
        if (w == 0) {
          queue.push_front(t);
        } else {
          queue.push_back(t);
        }
      }
    }
  }
}

}  // namespace

std::vector<std::string> root_candidates(const GsnGraph& graph) {
  Adjacency adj = build_adjacency(graph);
  std::vector<std::string> roots;
  std::set<std::string> seen;
  for (const Element& e : graph.elements()) {
    if (is_core_kind(e.kind) && adj.in_degree[e.id] == 0 &&
        seen.insert(e.id).second) {
      roots.push_back(e.id);
    }
  }
  std::sort(roots.begin(), roots.end(), text::NaturalLess{});
  return roots;
}

std::vector<std::string> free_contextual_elements(const GsnGraph& graph) {
  Adjacency adj = build_adjacency(graph);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const Element& e : graph.elements()) {
    if (is_contextual_kind(e.kind) && adj.in_degree[e.id] == 0 &&
        seen.insert(e.id).second) {
      out.push_back(e.id);
    }
  }
  std::sort(out.begin(), out.end(), text::NaturalLess{});
  return out;
}

DepthMap compute_depths(const GsnGraph& graph, bool strict) {
  Adjacency adj = build_adjacency(graph);
  check_acyclic(graph, adj);

  std::vector<std::string> roots = root_candidates(graph);
  if (strict && roots.size() > 1) {
    throw Error(ErrorCode::kMultipleRoots,
                "graph has " + std::to_string(roots.size()) + " roots");
  }

  std::unordered_map<std::string, int> depth;
  std::deque<std::string> queue;
  for (const std::string& r : roots) {
    depth[r] = 1;
    queue.push_back(r);
  }
  relax_from(adj, queue, depth);

  for (const Element& e : graph.elements()) {
    if (depth.count(e.id) != 0) continue;
    if (strict) {
      throw Error(ErrorCode::kUnreachableElement,
                  "'" + e.id + "' is not reachable from the root");
    }
    if (adj.in_degree[e.id] == 0) {
      depth[e.id] = 1;
      queue.push_back(e.id);
      relax_from(adj, queue, depth);
    }
  }

  DepthMap out;
  for (const Element& e : graph.elements()) {
    auto it = depth.find(e.id);
    if (it == depth.end()) {
      throw Error(ErrorCode::kUnreachableElement,
                  "'" + e.id + "' is not reachable from any root");
    }
    out.emplace(e.id, it->second);
  }
  return out;
}

void assign_depths(GsnGraph& graph) {
  DepthMap depths;
  try {
    depths = compute_depths(graph, false);
  } catch (const Error&) {
    for (Relationship& r : graph.relationships()) r.depth = 0;
    return;
  }
  for (Relationship& r : graph.relationships()) {
    auto it = depths.find(r.source);
    r.depth = it == depths.end() ? 0 : it->second;
  }
}

bool is_instantiated_case(const GsnGraph& graph) {
  if (!graph.annotations().empty()) return false;
  for (const Element& e : graph.elements()) {
    if (e.decorators.contains(Decorator::kUninstantiated) ||
        e.decorators.contains(Decorator::kUndevelopStantiated)) {
      return false;
    }
    if (e.has_placeholder || description_has_placeholder(e.description)) {
      return false;
    }
  }
  return true;
}

std::set<std::string> reachable_from(const GsnGraph& graph,
                                     std::string_view id) {
  std::set<std::string> seen{std::string(id)};
  std::vector<std::string> stack{std::string(id)};
  while (!stack.empty()) {
    std::string node = stack.back();
    stack.pop_back();
    for (const Relationship& r : graph.relationships()) {
      if (r.source != node) continue;
      for (const std::string& t : r.targets) {
        if (seen.insert(t).second) stack.push_back(t);
      }
    }
  }
  return seen;
}

namespace {

using ElementKey = std::tuple<std::string, int, std::string,
                              std::vector<Decorator>, bool>;
using RelationKey = std::tuple<int, std::string, std::vector<std::string>, int>;
using AnnotationKey = std::tuple<int, std::string, std::vector<std::string>,
                                 std::string>;

std::vector<ElementKey> element_keys(const GsnGraph& g) {
  std::vector<ElementKey> keys;
  for (const Element& e : g.elements()) {
    keys.emplace_back(e.id, static_cast<int>(e.kind), e.description,
                      e.decorators.to_vector(), e.has_placeholder);
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<RelationKey> relation_keys(const GsnGraph& g) {
  std::vector<RelationKey> keys;
  for (const Relationship& r : g.relationships()) {
    keys.emplace_back(static_cast<int>(r.kind), r.source, r.targets, r.depth);
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<AnnotationKey> annotation_keys(const GsnGraph& g) {
  std::vector<AnnotationKey> keys;
  for (const PatternAnnotation& a : g.annotations()) {
    keys.emplace_back(static_cast<int>(a.kind), a.source, a.targets,
                      a.label ? a.label->to_string() : std::string());
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

bool equivalent(const GsnGraph& a, const GsnGraph& b) {
  return element_keys(a) == element_keys(b) &&
         relation_keys(a) == relation_keys(b) &&
         annotation_keys(a) == annotation_keys(b);
}

std::string debug_dump(const GsnGraph& graph) {
  std::ostringstream out;
  for (const auto& [id, kind, desc, decos, ph] : element_keys(graph)) {
    out << "E " << id << " " << to_string(static_cast<ElementKind>(kind))
        << " ph=" << ph << " [";
    for (Decorator d : decos) out << to_string(d) << ";";
    out << "] " << desc << "\n";
  }
  for (const auto& [kind, src, targets, depth] : relation_keys(graph)) {
    out << "R " << to_string(static_cast<RelationKind>(kind)) << " " << src
        << " ->";
    for (const auto& t : targets) out << " " << t;
    out << " @" << depth << "\n";
  }
  for (const auto& [kind, src, targets, label] : annotation_keys(graph)) {
    out << "A " << to_string(static_cast<AnnotationKind>(kind)) << " " << src
        << " ->";
    for (const auto& t : targets) out << " " << t;
    out << " " << label << "\n";
  }
  return out.str();
}

}  // namespace gsnforge
