#include <algorithm>
#include <sstream>

#include "gsnforge/prose_codec.hpp"

namespace gsnforge {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

std::string_view node_style(ElementKind kind) {
  switch (kind) {
    case ElementKind::kGoal: return "shape=box";
    case ElementKind::kStrategy: return "shape=parallelogram";
    case ElementKind::kSolution: return "shape=circle";
    case ElementKind::kContext: return "shape=box, style=rounded";
    case ElementKind::kAssumption:
    case ElementKind::kJustification: return "shape=ellipse";
  }
  return "shape=box";
}

}  // namespace

std::string render_dot(const GsnGraph& graph) {
  std::vector<const Element*> nodes;
  for (const Element& e : graph.elements()) nodes.push_back(&e);
  std::stable_sort(nodes.begin(), nodes.end(), [](const Element* a, const Element* b) {
    return text::natural_less(a->id, b->id);
  });

  std::ostringstream out;
  out << "digraph gsn {\n  rankdir=TB;\n  node [fontsize=10];\n";
  for (const Element* e : nodes) {
    std::string label = e->id;
    if (e->kind == ElementKind::kAssumption) label += " (A)";
    if (e->kind == ElementKind::kJustification) label += " (J)";
    label += "\n" + e->description;
    out << "  " << quote(e->id) << " [" << node_style(e->kind)
        << ", label=" << quote(label);
    if (e->decorators.contains(Decorator::kUndeveloped) ||
        e->decorators.contains(Decorator::kUndevelopStantiated)) {
      out << ", peripheries=2";
    }
    out << "];\n";
  }
  for (const Edge& edge : graph.edges()) {
    out << "  " << quote(edge.source) << " -> " << quote(edge.target);
    if (edge.kind == RelationKind::kInContextOf) {
      out << " [arrowhead=empty]";
    } else {
      out << " [arrowhead=normal]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace gsnforge
