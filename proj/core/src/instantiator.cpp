#include "gsnforge/instantiator.hpp"

#include <algorithm>
#include <set>

#include "gsnforge/errors.hpp"

namespace gsnforge {

namespace {

std::string annotation_ref(const PatternAnnotation& a) {
  std::string out = std::string(to_string(a.kind)) + " (" + a.source + ", [";
  for (std::size_t i = 0; i < a.targets.size(); ++i) {
    out += (i ? ", " : "") + a.targets[i];
  }
  out += "]";
  if (a.label) out += ", " + a.label->to_string();
  return out + ")";
}

class Instantiation {
 public:
  Instantiation(const GsnGraph& pattern, const BindingPlan& plan)
      : g_(pattern), plan_(plan) {}

  void expand_multiplicities() {
    while (true) {
      DepthMap depths = compute_depths(g_, false);
      auto& anns = g_.annotations();
      std::optional<std::size_t> pick;
      for (std::size_t i = 0; i < anns.size(); ++i) {
        if (anns[i].kind != AnnotationKind::kMultiplicity) continue;
        if (!pick || outer(anns[i], anns[*pick], depths)) pick = i;
      }
      if (!pick) return;
      PatternAnnotation ann = anns[*pick];
      anns.erase(anns.begin() + static_cast<std::ptrdiff_t>(*pick));

      const CountEntry* entry = find_entry(plan_.counts, ann);
      if (entry == nullptr) {
        throw Error(ErrorCode::kMissingBinding, "no count for " + annotation_ref(ann));
      }
      std::uint32_t n = entry->count;
      std::uint32_t lo = ann.label ? ann.label->lower() : 0;
      std::uint32_t hi = ann.label ? ann.label->upper(plan_.wildcard_cap) : plan_.wildcard_cap;
      if (n < lo || n > hi) {
        throw Error(ErrorCode::kCountViolatesLabel,
                    "count " + std::to_string(n) + " for " + annotation_ref(ann));
      }
      auto before = snapshot();
      for (const std::string& t : ann.targets) {
        if (!g_.contains(t)) {
          throw Error(ErrorCode::kInvalidArgument, "annotated target '" + t + "' is undeclared");
        }
        expand(t, n);
      }
      if (n == 0) prune(before);
    }
  }

  void resolve_choices() {
    std::vector<PatternAnnotation> choices;
    for (const PatternAnnotation& a : g_.annotations()) {
      if (a.kind == AnnotationKind::kChoice) choices.push_back(a);
    }
    for (PatternAnnotation ann : choices) {
      if (!g_.contains(ann.source)) continue;
      const SelectionEntry* entry = find_entry(plan_.selections, ann);
      if (entry == nullptr) {
        throw Error(ErrorCode::kMissingBinding, "no selection for " + annotation_ref(ann));
      }
      std::set<std::string> keep;
      for (const std::string& sel : entry->selected) {
        auto it = std::find_if(ann.targets.begin(), ann.targets.end(),
                               [&](const std::string& t) { return t == sel; });
        if (it == ann.targets.end()) {
          it = std::find_if(ann.targets.begin(), ann.targets.end(),
                            [&](const std::string& t) { return origin_of(t) == sel; });
        }
        if (it == ann.targets.end()) {
          throw Error(ErrorCode::kInvalidPlan,
                      "'" + sel + "' is not a target of " + annotation_ref(ann));
        }
        keep.insert(*it);
      }
      std::uint32_t lo = ann.label ? ann.label->lower() : 0;
      std::uint32_t hi = ann.label
                             ? std::min<std::uint32_t>(ann.label->upper(plan_.wildcard_cap),
                                                       static_cast<std::uint32_t>(ann.targets.size()))
                             : static_cast<std::uint32_t>(ann.targets.size());
      if (keep.size() < lo || keep.size() > hi) {
        throw Error(ErrorCode::kSelectionViolatesLabel,
                    std::to_string(keep.size()) + " selected for " + annotation_ref(ann));
      }
      std::vector<std::string> dropped;
      for (const std::string& t : ann.targets) {
        if (keep.count(t) == 0 && g_.contains(t)) dropped.push_back(t);
      }
      drop(ann.source, dropped);
    }
  }

  void resolve_optionals() {
    std::vector<PatternAnnotation> optionals;
    for (const PatternAnnotation& a : g_.annotations()) {
      if (a.kind == AnnotationKind::kOptional) optionals.push_back(a);
    }
    for (const PatternAnnotation& ann : optionals) {
      if (!g_.contains(ann.source)) continue;
      const InclusionEntry* entry = find_entry(plan_.inclusions, ann);
      if (entry == nullptr) {
        throw Error(ErrorCode::kMissingBinding, "no inclusion for " + annotation_ref(ann));
      }
      if (entry->include) continue;
      std::vector<std::string> dropped;
      for (const std::string& t : ann.targets) {
        if (g_.contains(t)) dropped.push_back(t);
      }
      drop(ann.source, dropped);
    }
  }

  void resolve_undevelopment() {
    std::vector<std::string> ids;
    for (const Element& e : g_.elements()) {
      if (e.decorators.contains(Decorator::kUndevelopStantiated)) ids.push_back(e.id);
    }
    for (const std::string& id : ids) {
      Element* e = g_.find(id);
      if (e == nullptr) continue;
      auto it = plan_.keep_undeveloped.find(id);
      if (it == plan_.keep_undeveloped.end()) it = plan_.keep_undeveloped.find(origin_of(id));
      if (it == plan_.keep_undeveloped.end()) {
        throw Error(ErrorCode::kUnresolvedUndevelopment,
                    "no develop decision for '" + id + "'");
      }
      const Relationship* sb = g_.find_relationship(RelationKind::kSupportedBy, id);
      if (it->second) {
        e->decorators = DecoratorSet{Decorator::kUndeveloped};
        if (sb != nullptr) drop(id, std::vector<std::string>(sb->targets));
      } else {
        if (sb == nullptr) {
          throw Error(ErrorCode::kUnresolvedUndevelopment,
                      "'" + id + "' is to be developed but has no support");
        }
        e->decorators.erase(Decorator::kUndevelopStantiated);
      }
    }
  }

  void substitute() {
    for (const Element& cur : std::vector<Element>(g_.elements())) {
      Element* e = g_.find(cur.id);
      auto spans = text::placeholder_spans(e->description);
      e->has_placeholder = false;
      if (spans.empty()) continue;
      auto it = plan_.bindings.find(e->id);
      if (it == plan_.bindings.end()) it = plan_.bindings.find(origin_of(e->id));
      if (it == plan_.bindings.end() || it->second.size() < spans.size()) {
        std::size_t have = it == plan_.bindings.end() ? 0 : it->second.size();
        throw Error(ErrorCode::kMissingBinding,
                    "'" + e->id + "' placeholder " + std::to_string(have + 1) + " of " +
                        std::to_string(spans.size()) + " is unbound");
      }
      std::string desc = e->description;
      for (std::size_t k = spans.size(); k-- > 0;) {
        desc.replace(spans[k].begin, spans[k].end - spans[k].begin, it->second[k]);
      }
      if (description_has_placeholder(desc)) {
        throw Error(ErrorCode::kInvalidPlan,
                    "binding for '" + e->id + "' introduces a placeholder");
      }
      e->description = std::move(desc);
    }
  }

  void finish() {
    g_.annotations().clear();
    for (const Element& cur : std::vector<Element>(g_.elements())) {
      g_.find(cur.id)->decorators.erase(Decorator::kUninstantiated);
    }
    assign_depths(g_);
  }

  GsnGraph& graph() { return g_; }

  std::map<std::string, std::string> origins() const {
    std::map<std::string, std::string> out;
    for (const Element& e : g_.elements()) out[e.id] = origin_of(e.id);
    return out;
  }

 private:
  struct Snapshot {
    std::vector<std::string> anchors;
  };

  std::string origin_of(const std::string& id) const {
    auto it = origin_.find(id);
    return it == origin_.end() ? id : it->second;
  }

  static bool outer(const PatternAnnotation& a, const PatternAnnotation& b,
                    const DepthMap& depths) {
    int da = depths.count(a.source) ? depths.at(a.source) : 0;
    int db = depths.count(b.source) ? depths.at(b.source) : 0;
    if (da != db) return da < db;
    return text::natural_less(a.source, b.source);
  }

  // 2 = instance ids, 1 = pattern ids, 0 = no match.
  int match(const std::string& source, const std::vector<std::string>& targets,
            const PatternAnnotation& ann) const {
    if (targets.size() != ann.targets.size()) return 0;
    auto all = [&](bool exact) {
      if ((exact ? ann.source : origin_of(ann.source)) != source) return false;
      for (const std::string& t : ann.targets) {
        std::string want = exact ? t : origin_of(t);
        if (std::find(targets.begin(), targets.end(), want) == targets.end()) return false;
      }
      return true;
    };
    if (all(true)) return 2;
    if (all(false)) return 1;
    return 0;
  }

  template <typename Entry>
  const Entry* find_entry(const std::vector<Entry>& entries,
                          const PatternAnnotation& ann) const {
    const Entry* best = nullptr;
    int best_score = 0;
    for (const Entry& e : entries) {
      int s = match(e.source, e.targets, ann);
      if (s > best_score) {
        best = &e;
        best_score = s;
      }
    }
    return best;
  }

  Snapshot snapshot() const {
    Snapshot s;
    s.anchors = root_candidates(g_);
    for (const std::string& id : free_contextual_elements(g_)) s.anchors.push_back(id);
    return s;
  }

  // Removes everything no longer reachable from the snapshot's anchors and
  // rejects developed Strategies that lost all support.
  void prune(const Snapshot& before) {
    std::set<std::string> keep;
    for (const std::string& a : before.anchors) {
      if (!g_.contains(a)) continue;
      auto r = reachable_from(g_, a);
      keep.insert(r.begin(), r.end());
    }
    std::vector<std::string> doomed;
    for (const Element& e : g_.elements()) {
      if (keep.count(e.id) == 0) doomed.push_back(e.id);
    }
    for (const std::string& id : doomed) g_.remove_element(id);
    for (const Element& e : g_.elements()) {
      if (e.kind == ElementKind::kStrategy && had_support_.count(e.id) != 0 &&
          !e.decorators.contains(Decorator::kUndeveloped) &&
          g_.find_relationship(RelationKind::kSupportedBy, e.id) == nullptr) {
        throw Error(ErrorCode::kDanglingAfterDrop,
                    "Strategy '" + e.id + "' lost all of its support");
      }
    }
  }

  void drop(const std::string& source, const std::vector<std::string>& targets) {
    if (targets.empty()) return;
    remember_support();
    Snapshot before = snapshot();
    for (const std::string& t : targets) {
      g_.remove_edge(RelationKind::kSupportedBy, source, t);
      g_.remove_edge(RelationKind::kInContextOf, source, t);
    }
    prune(before);
  }

  void remember_support() {
    had_support_.clear();
    for (const Relationship& r : g_.relationships()) {
      if (r.kind == RelationKind::kSupportedBy) had_support_.insert(r.source);
    }
  }

  void expand(const std::string& t, std::uint32_t n) {
    remember_support();
    std::set<std::string> sub = reachable_from(g_, t);
    auto rename = [&](const std::string& id, std::uint32_t k) {
      return sub.count(id) ? id + "." + std::to_string(k) : id;
    };
    std::vector<Element> sub_elements;
    for (const Element& e : g_.elements()) {
      if (sub.count(e.id)) sub_elements.push_back(e);
    }
    std::vector<Relationship> sub_rels;
    for (const Relationship& r : g_.relationships()) {
      if (sub.count(r.source)) sub_rels.push_back(r);
    }
    std::vector<PatternAnnotation> sub_anns;
    for (const PatternAnnotation& a : g_.annotations()) {
      if (sub.count(a.source)) sub_anns.push_back(a);
    }

    for (std::uint32_t k = 1; k <= n; ++k) {
      for (const Element& e : sub_elements) {
        Element c = e;
        c.id = rename(e.id, k);
        if (g_.contains(c.id)) {
          throw Error(ErrorCode::kInvalidPlan, "clone id '" + c.id + "' already exists");
        }
        origin_[c.id] = origin_of(e.id);
        g_.add_element(std::move(c));
      }
      for (const Relationship& r : sub_rels) {
        std::vector<std::string> targets;
        for (const std::string& x : r.targets) targets.push_back(rename(x, k));
        g_.add_relationship(r.kind, rename(r.source, k), targets, r.depth);
      }
      for (const PatternAnnotation& a : sub_anns) {
        PatternAnnotation c = a;
        c.source = rename(a.source, k);
        for (std::string& x : c.targets) x = rename(x, k);
        g_.add_annotation(std::move(c));
      }
    }

    auto splice = [&](std::vector<std::string>& targets) {
      auto it = std::find(targets.begin(), targets.end(), t);
      if (it == targets.end()) return;
      std::vector<std::string> clones;
      for (std::uint32_t k = 1; k <= n; ++k) clones.push_back(t + "." + std::to_string(k));
      it = targets.erase(it);
      targets.insert(it, clones.begin(), clones.end());
    };
    for (Relationship& r : g_.relationships()) {
      if (!sub.count(r.source)) splice(r.targets);
    }
    for (PatternAnnotation& a : g_.annotations()) {
      if (!sub.count(a.source)) splice(a.targets);
    }
    for (const Element& e : sub_elements) g_.remove_element(e.id);
  }

  GsnGraph g_;
  const BindingPlan& plan_;
  std::map<std::string, std::string> origin_;
  std::set<std::string> had_support_;
};

}  // namespace

GsnGraph instantiate(const GsnGraph& pattern, const BindingPlan& plan) {
  Instantiation inst(pattern, plan);
  inst.expand_multiplicities();
  inst.resolve_choices();
  inst.resolve_optionals();
  inst.resolve_undevelopment();
  inst.substitute();
  inst.finish();
  return std::move(inst.graph());
}

std::map<std::string, std::string> instance_origins(const GsnGraph& pattern,
                                                    const BindingPlan& plan) {
  Instantiation inst(pattern, plan);
  inst.expand_multiplicities();
  inst.resolve_choices();
  inst.resolve_optionals();
  inst.resolve_undevelopment();
  return inst.origins();
}

}  // namespace gsnforge
