#include <algorithm>
#include <map>
#include <set>

#include "gsnforge/instantiator.hpp"

namespace gsnforge {

namespace {

std::vector<const Element*> sorted_elements(const GsnGraph& g) {
  std::vector<const Element*> out;
  for (const Element& e : g.elements()) out.push_back(&e);
  std::stable_sort(out.begin(), out.end(), [](const Element* x, const Element* y) {
    return text::natural_less(x->id, y->id);
  });
  return out;
}

std::size_t out_degree(const GsnGraph& g, const std::string& id, RelationKind kind) {
  const Relationship* r = g.find_relationship(kind, id);
  return r == nullptr ? 0 : r->targets.size();
}

}  // namespace

StructureDiff diff_structure(const GsnGraph& a, const GsnGraph& b) {
  StructureDiff d;
  auto ea = sorted_elements(a);
  auto eb = sorted_elements(b);
  std::map<std::string, std::string> a_to_b;
  std::map<std::string, std::string> b_to_a;

  for (const Element* x : ea) {
    if (a_to_b.count(x->id)) continue;
    const Element* y = b.find(x->id);
    if (y == nullptr || b_to_a.count(y->id)) continue;
    a_to_b[x->id] = y->id;
    b_to_a[y->id] = x->id;
    if (x->kind != y->kind) d.kind_mismatch.push_back({x->id, y->id, x->kind, y->kind});
  }
  for (ElementKind kind : kAllElementKinds) {
    std::vector<const Element*> ra;
    std::vector<const Element*> rb;
    for (const Element* x : ea) {
      if (x->kind == kind && !a_to_b.count(x->id)) ra.push_back(x);
    }
    for (const Element* y : eb) {
      if (y->kind == kind && !b_to_a.count(y->id)) rb.push_back(y);
    }
    std::size_t n = std::min(ra.size(), rb.size());
    for (std::size_t i = 0; i < n; ++i) {
      a_to_b[ra[i]->id] = rb[i]->id;
      b_to_a[rb[i]->id] = ra[i]->id;
    }
  }
  std::set<std::string> seen_a;
  for (const Element* x : ea) {
    if (!a_to_b.count(x->id) && seen_a.insert(x->id).second) d.extra.push_back(x->id);
  }
  std::set<std::string> seen_b;
  for (const Element* y : eb) {
    if (!b_to_a.count(y->id) && seen_b.insert(y->id).second) d.missing.push_back(y->id);
  }

  for (const auto& [xa, yb] : a_to_b) {
    for (RelationKind kind : {RelationKind::kSupportedBy, RelationKind::kInContextOf}) {
      std::size_t da = out_degree(a, xa, kind);
      std::size_t db = out_degree(b, yb, kind);
      if (da != db) d.degree_mismatch.push_back({xa, yb, kind, da, db});
    }
  }
  std::sort(d.degree_mismatch.begin(), d.degree_mismatch.end(),
            [](const DegreeMismatch& x, const DegreeMismatch& y) {
              if (x.a_id != y.a_id) return text::natural_less(x.a_id, y.a_id);
              return x.kind < y.kind;
            });

  auto map_edge = [](const Edge& e, const std::map<std::string, std::string>& m)
      -> std::optional<Edge> {
    auto s = m.find(e.source);
    auto t = m.find(e.target);
    if (s == m.end() || t == m.end()) return std::nullopt;
    return Edge{e.kind, s->second, t->second};
  };
  std::set<Edge> edges_a;
  std::set<Edge> edges_b;
  for (const Edge& e : a.edges()) edges_a.insert(e);
  for (const Edge& e : b.edges()) edges_b.insert(e);
  for (const Edge& e : b.edges()) {
    auto m = map_edge(e, b_to_a);
    if (!m || edges_a.count(*m) == 0) d.missing_edges.push_back(e);
  }
  for (const Edge& e : a.edges()) {
    auto m = map_edge(e, a_to_b);
    if (!m || edges_b.count(*m) == 0) d.extra_edges.push_back(e);
  }

  for (ElementKind kind : kAllElementKinds) {
    long ca = std::count_if(ea.begin(), ea.end(), [&](const Element* x) { return x->kind == kind; });
    long cb = std::count_if(eb.begin(), eb.end(), [&](const Element* y) { return y->kind == kind; });
    if (ca != cb) d.kind_counts.push_back({kind, ca, cb});
  }
  return d;
}

}  // namespace gsnforge
