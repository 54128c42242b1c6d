#include "generators.hpp"

#include <algorithm>

#include "gsnforge/text.hpp"

namespace gsnforge::testing {

namespace {

const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "system",   "hazard",    "risk",     "control",  "sensor",   "braking",  "monitor",
      "software", "verified",  "argument", "evidence", "operator", "failure",  "mode",
      "analysis", "test",      "report",   "network",  "model",    "input",    "output",
      "timing",   "acceptable", "safe",    "secure",   "threat",   "asset",    "review",
      "pump",     "dose",      "vehicle",  "tether",   "runtime",  "coverage", "limit",
      "each",     "all",       "is",       "are",      "of",       "the",      "over"};
  return words;
}

bool coin(std::mt19937& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

struct Builder {
  std::mt19937& rng;
  GsnGraph g;
  std::map<ElementKind, int> counter;

  std::string description(bool placeholders) {
    std::string d = random_sentence(rng, 2, 7);
    if (placeholders && coin(rng, 0.35)) {
      int spans = uniform(rng, 1, 2);
      for (int i = 0; i < spans; ++i) {
        std::string ph = "{" + random_sentence(rng, 1, 2) + "}";
        d = coin(rng, 0.5) ? ph + " " + d : d + " " + ph;
      }
    }
    return d;
  }

  std::string make(ElementKind kind, bool placeholders) {
    Element e;
    e.id = std::string(conventional_prefix(kind)) + std::to_string(++counter[kind]);
    e.kind = kind;
    e.description = description(placeholders);
    e.has_placeholder = description_has_placeholder(e.description);
    g.add_element(e);
    return e.id;
  }

  ElementKind contextual_kind() {
    static const std::vector<ElementKind> kinds = {ElementKind::kContext, ElementKind::kAssumption,
                                                   ElementKind::kJustification};
    return pick(rng, kinds);
  }

  // Core tree under a Goal root; returns Goal/Strategy ids.
  std::vector<std::string> grow(int max_core, bool placeholders) {
    std::string root = make(ElementKind::kGoal, placeholders);
    std::vector<std::string> sources = {root};
    int n = uniform(rng, 1, max_core);
    for (int i = 0; i < n; ++i) {
      const std::string parent = pick(rng, sources);
      ElementKind pk = g.find(parent)->kind;
      ElementKind ck = ElementKind::kGoal;
      if (pk == ElementKind::kGoal) {
        double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        ck = r < 0.45 ? ElementKind::kGoal : r < 0.75 ? ElementKind::kStrategy : ElementKind::kSolution;
      }
      std::string id = make(ck, placeholders);
      g.add_relationship(RelationKind::kSupportedBy, parent, {id});
      if (ck != ElementKind::kSolution) sources.push_back(id);
    }
    for (const std::string& s : sources) {
      int k = uniform(rng, 0, 2);
      for (int i = 0; i < k; ++i) {
        g.add_relationship(RelationKind::kInContextOf, s, {make(contextual_kind(), placeholders)});
      }
    }
    return sources;
  }
};

}  // namespace

std::string random_sentence(std::mt19937& rng, int min_words, int max_words) {
  int n = uniform(rng, min_words, max_words);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += pick(rng, vocabulary());
  }
  return out;
}

std::string random_text(std::mt19937& rng, int max_len) {
  static const std::vector<std::string> alphabet = {
      "a", "b", "c", "d", "e", "A", "B", " ", " ", "-", "\n", ".", ",", "é", "É", "–", "\t", "x"};
  int n = uniform(rng, 0, max_len);
  std::string out;
  for (int i = 0; i < n; ++i) out += pick(rng, alphabet);
  return out;
}

GsnGraph random_graph(std::mt19937& rng, const GraphShape& shape) {
  Builder b{rng, {}, {}};
  std::vector<std::string> sources = b.grow(shape.max_core, shape.pattern);
  GsnGraph& g = b.g;

  if (coin(rng, shape.shared_context) && sources.size() > 1) {
    std::vector<std::string> ctx;
    for (const Element& e : g.elements()) {
      if (is_contextual_kind(e.kind)) ctx.push_back(e.id);
    }
    if (!ctx.empty()) {
      const std::string c = pick(rng, ctx);
      const std::string s = pick(rng, sources);
      const Relationship* r = g.find_relationship(RelationKind::kInContextOf, s);
      if (r == nullptr || std::find(r->targets.begin(), r->targets.end(), c) == r->targets.end()) {
        g.add_relationship(RelationKind::kInContextOf, s, {c});
      }
    }
  }
  if (coin(rng, shape.free_context)) {
    int k = uniform(rng, 1, 2);
    for (int i = 0; i < k; ++i) b.make(b.contextual_kind(), shape.pattern);
  }

  for (const Element& cur : std::vector<Element>(g.elements())) {
    Element* e = g.find(cur.id);
    const bool has_support = g.find_relationship(RelationKind::kSupportedBy, e->id) != nullptr;
    if (shape.pattern && e->has_placeholder && coin(rng, 0.7)) {
      e->decorators.insert(Decorator::kUninstantiated);
    }
    if (e->kind == ElementKind::kGoal && !has_support && coin(rng, 0.3)) {
      e->decorators.insert(Decorator::kUndeveloped);
    }
    if (shape.pattern && e->kind == ElementKind::kGoal && has_support && coin(rng, 0.12)) {
      e->decorators = DecoratorSet{Decorator::kUndevelopStantiated};
    }
  }

  if (shape.pattern) {
    static const std::vector<std::string> labels = {"1 of *", "0 of *", "1 of 3", "2 of 4", "* of *"};
    for (const Relationship& r : std::vector<Relationship>(g.relationships())) {
      if (!coin(rng, r.kind == RelationKind::kSupportedBy ? 0.3 : 0.1)) continue;
      PatternAnnotation a;
      a.source = r.source;
      if (r.kind == RelationKind::kSupportedBy && r.targets.size() >= 2 && coin(rng, 0.4)) {
        a.kind = AnnotationKind::kChoice;
        std::vector<std::string> t = r.targets;
        std::shuffle(t.begin(), t.end(), rng);
        a.targets = {t[0], t[1]};
        a.label = Cardinality::parse("1 of 2");
      } else if (r.kind == RelationKind::kSupportedBy && coin(rng, 0.3)) {
        a.kind = AnnotationKind::kOptional;
        a.targets = {pick(rng, r.targets)};
      } else {
        a.kind = AnnotationKind::kMultiplicity;
        a.targets = {pick(rng, r.targets)};
        a.label = Cardinality::parse(pick(rng, labels));
      }
      g.add_annotation(std::move(a));
    }
  }
  assign_depths(g);
  return std::move(b.g);
}

RandomPattern random_multiplicity_pattern(std::mt19937& rng) {
  Builder b{rng, {}, {}};
  b.grow(7, true);
  RandomPattern out;
  GsnGraph& g = b.g;
  for (const Edge& e : g.edges()) {
    if (!coin(rng, 0.35)) continue;
    const bool contextual = e.kind == RelationKind::kInContextOf;
    PatternAnnotation a{AnnotationKind::kMultiplicity, e.source, {e.target},
                        Cardinality::parse(contextual ? "0 of *" : "1 of *")};
    g.add_annotation(a);
    out.plan.counts.push_back(
        CountEntry{e.source, {e.target}, static_cast<std::uint32_t>(uniform(rng, contextual ? 0 : 1, 3))});
  }
  for (const Element& e : g.elements()) {
    auto spans = text::placeholder_spans(e.description);
    if (spans.empty()) continue;
    std::vector<std::string> texts;
    for (std::size_t i = 0; i < spans.size(); ++i) texts.push_back(random_sentence(rng, 1, 3));
    out.plan.bindings[e.id] = texts;
  }
  assign_depths(g);
  out.pattern = std::move(b.g);
  return out;
}

}  // namespace gsnforge::testing
