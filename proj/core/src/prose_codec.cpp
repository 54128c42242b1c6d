#include "gsnforge/prose_codec.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace gsnforge {

std::string_view to_string(AnomalyKind kind) {
  switch (kind) {
    case AnomalyKind::kUnknownElementKind: return "UnknownElementKind";
    case AnomalyKind::kMissingId: return "MissingId";
    case AnomalyKind::kDuplicateId: return "DuplicateId";
    case AnomalyKind::kInconsistentPrefix: return "InconsistentPrefix";
    case AnomalyKind::kOrphanNode: return "OrphanNode";
  }
  return "?";
}

namespace {

std::string summarize(const std::vector<ProseAnomaly>& anomalies) {
  std::string out = std::to_string(anomalies.size()) + " anomalies";
  for (const ProseAnomaly& a : anomalies) {
    out += "; line " + std::to_string(a.line) + " " +
           std::string(to_string(a.kind)) + ": " + a.detail;
  }
  return out;
}

}  // namespace

ProseParseError::ProseParseError(std::vector<ProseAnomaly> anomalies)
    : Error(ErrorCode::kParseFailed, summarize(anomalies)),
      anomalies_(std::move(anomalies)) {}

namespace {

bool is_id_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
}

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }

// Letters followed by at least one digit: G1, Sn12, A1.1.2.
bool looks_like_id(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_alpha(s[i])) ++i;
  if (i == 0 || i == s.size() || s[i] < '0' || s[i] > '9') return false;
  return std::all_of(s.begin(), s.end(), is_id_char);
}

std::string_view alpha_prefix(std::string_view id) {
  std::size_t i = 0;
  while (i < id.size() && is_alpha(id[i])) ++i;
  return id.substr(0, i);
}

std::optional<ElementKind> kind_from_prefix(std::string_view id) {
  std::string_view p = alpha_prefix(id);
  for (ElementKind k : kAllElementKinds) {
    if (conventional_prefix(k) == p) return k;
  }
  if (p == "E") return ElementKind::kSolution;
  return std::nullopt;
}

std::optional<ElementKind> rogue_kind(std::string_view word) {
  if (word == "Evidence") return ElementKind::kSolution;
  if (word == "Argument" || word == "Inference") return ElementKind::kStrategy;
  return std::nullopt;
}

std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (s[i] == ',' && depth == 0) {
      parts.push_back(text::trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(text::trim(s.substr(start)));
  return parts;
}

struct AnnotationTag {
  AnnotationKind kind;
  std::vector<std::string> targets;
  std::optional<Cardinality> label;
};

struct Tags {
  std::optional<RelationKind> edge;
  DecoratorSet decorators;
  bool has_placeholder = false;
  std::vector<AnnotationTag> annotations;
};

std::optional<AnnotationTag> parse_annotation_tag(std::string_view tag) {
  AnnotationTag a;
  std::string_view rest;
  for (AnnotationKind k : {AnnotationKind::kChoice, AnnotationKind::kMultiplicity,
                           AnnotationKind::kOptional}) {
    std::string_view name = to_string(k);
    if (tag.substr(0, name.size()) == name) {
      a.kind = k;
      rest = text::trim(tag.substr(name.size()));
      break;
    }
  }
  if (rest.empty() || rest.front() != '[') return std::nullopt;
  std::size_t close = rest.find(']');
  if (close == std::string_view::npos) return std::nullopt;
  std::string_view list = rest.substr(1, close - 1);
  for (std::string_view id : split_top_level(list)) {
    if (id.empty()) return std::nullopt;
    a.targets.emplace_back(id);
  }
  std::string_view label = text::trim(rest.substr(close + 1));
  if (!label.empty()) {
    a.label = Cardinality::parse(label);
    if (!a.label) return std::nullopt;
  }
  return a;
}

Tags parse_tags(std::string_view group) {
  Tags tags;
  for (std::string_view tag : split_top_level(group)) {
    if (tag == "InContextOf" || tag == "IncontextOf") {
      tags.edge = RelationKind::kInContextOf;
    } else if (tag == "SupportedBy") {
      tags.edge = RelationKind::kSupportedBy;
    } else if (tag == "HasPlaceholder") {
      tags.has_placeholder = true;
    } else if (auto d = parse_decorator(tag)) {
      tags.decorators.insert(*d);
    } else if (auto a = parse_annotation_tag(tag)) {
      tags.annotations.push_back(std::move(*a));
    }
  }
  return tags;
}

struct ProseLine {
  std::size_t line_no = 0;
  std::size_t dashes = 0;
  std::string kind_word;
  std::string id;
  std::string tag_group;
  std::string description;
  bool has_colon = false;
};

// Splits `<dashes> <Kind> <Id> (tags): desc`; returns nullopt for lines that
// carry nothing after the dashes.
std::optional<ProseLine> split_line(std::string_view raw, std::size_t line_no) {
  ProseLine pl;
  pl.line_no = line_no;
  std::size_t i = 0;
  while (i < raw.size() && (raw[i] == '-' || raw[i] == ' ' || raw[i] == '\t')) {
    if (raw[i] == '-') ++pl.dashes;
    ++i;
  }
  std::string_view rest = text::trim(raw.substr(i));
  if (rest.empty()) return std::nullopt;

  std::size_t colon = rest.find(':');
  std::string_view header = rest;
  if (colon != std::string_view::npos) {
    pl.has_colon = true;
    header = rest.substr(0, colon);
    pl.description = std::string(text::trim(rest.substr(colon + 1)));
  }
  std::size_t open = header.find('(');
  if (open != std::string_view::npos) {
    std::size_t close = header.rfind(')');
    if (close != std::string_view::npos && close > open) {
      pl.tag_group =
          std::string(text::trim(header.substr(open + 1, close - open - 1)));
    }
    header = header.substr(0, open);
  }
  std::string cleaned;
  for (char c : header) {
    if (c != '*' && c != '#' && c != '`') cleaned.push_back(c);
  }
  std::string_view h = text::trim(cleaned);
  std::size_t sp = h.find_first_of(" \t");
  pl.kind_word = std::string(h.substr(0, sp));
  if (sp != std::string_view::npos) pl.id = std::string(text::trim(h.substr(sp + 1)));
  return pl;
}

struct Resolved {
  ElementKind kind = ElementKind::kGoal;
  std::string id;
  std::optional<ProseAnomaly> anomaly;
  bool noise = false;
};

}  // namespace

ProseParse parse_prose(std::string_view text, ProseMode mode) {
  if (text::trim(text).empty()) {
    throw Error(ErrorCode::kEmptyInput, "no prose lines");
  }
  auto raw_lines = text::split_lines(text);
  std::vector<ProseLine> lines;
  for (std::size_t i = 0; i < raw_lines.size(); ++i) {
    if (auto pl = split_line(raw_lines[i], i + 1)) lines.push_back(std::move(*pl));
  }
  if (lines.empty()) throw Error(ErrorCode::kEmptyInput, "no prose lines");
  std::size_t base = lines.front().dashes;
  for (const ProseLine& pl : lines) base = std::min(base, pl.dashes);

  ProseParse out;
  GsnGraph& g = out.graph;
  std::size_t synthesized = 0;
  std::map<std::string, std::size_t> dup_counter;
  // (depth, id) of the open ancestors.
  std::vector<std::pair<std::size_t, std::string>> stack;

  for (const ProseLine& pl : lines) {
    Resolved r;
    auto flag = [&](AnomalyKind k, std::string detail) {
      if (!r.anomaly) r.anomaly = ProseAnomaly{pl.line_no, k, std::move(detail)};
    };

    auto kind = parse_element_kind(pl.kind_word);
    std::string id = pl.id;
    if (!kind) {
      if (auto rk = rogue_kind(pl.kind_word)) {
        kind = rk;
        flag(AnomalyKind::kUnknownElementKind,
             "'" + pl.kind_word + "' read as " + std::string(to_string(*rk)));
      } else if (id.empty() && looks_like_id(pl.kind_word) && pl.has_colon) {
        id = pl.kind_word;
        kind = kind_from_prefix(id).value_or(ElementKind::kGoal);
        flag(AnomalyKind::kUnknownElementKind, "no kind before '" + id + "'");
      } else if (pl.has_colon && looks_like_id(id)) {
        kind = kind_from_prefix(id).value_or(ElementKind::kGoal);
        flag(AnomalyKind::kUnknownElementKind,
             "unknown kind '" + pl.kind_word + "'");
      } else {
        r.noise = true;
        flag(AnomalyKind::kUnknownElementKind, "not an element line");
      }
    }
    if (r.noise) {
      out.anomalies.push_back(*r.anomaly);
      continue;
    }
    r.kind = *kind;

    std::string description = pl.description;
    if (!looks_like_id(id)) {
      if (!id.empty()) {
        description = description.empty() ? id : id + ": " + description;
      }
      id = "X" + std::to_string(++synthesized);
      while (g.contains(id)) id = "X" + std::to_string(++synthesized);
      flag(AnomalyKind::kMissingId, "id synthesized as " + id);
    }

    Tags tags = parse_tags(pl.tag_group);
    bool reference = false;
    if (const Element* prior = g.find(id)) {
      if (prior->kind == r.kind && prior->description == description &&
          prior->decorators == tags.decorators) {
        reference = true;
      } else {
        std::string fresh;
        do {
          fresh = id + "_" + std::to_string(++dup_counter[id] + 1);
        } while (g.contains(fresh));
        flag(AnomalyKind::kDuplicateId, "'" + id + "' redefined, kept as " + fresh);
        id = fresh;
      }
    }
    if (!reference) {
      auto expected = kind_from_prefix(id);
      if (expected && *expected != r.kind) {
        flag(AnomalyKind::kInconsistentPrefix,
             std::string(to_string(r.kind)) + " with id '" + id + "'");
      }
    }

    std::size_t depth = pl.dashes - base + 1;
    while (!stack.empty() && stack.back().first >= depth) stack.pop_back();
    if (depth > 1 && stack.empty()) {
      flag(AnomalyKind::kOrphanNode, "no parent line for '" + id + "'");
    }

    if (!reference) {
      Element e;
      e.id = id;
      e.kind = r.kind;
      e.description = description;
      e.decorators = tags.decorators;
      e.has_placeholder =
          tags.has_placeholder || description_has_placeholder(description);
      g.add_element(std::move(e));
      for (AnnotationTag& a : tags.annotations) {
        g.add_annotation(PatternAnnotation{a.kind, id, a.targets, a.label});
      }
    }
    if (!stack.empty()) {
      RelationKind rk = tags.edge.value_or(is_contextual_kind(r.kind)
                                               ? RelationKind::kInContextOf
                                               : RelationKind::kSupportedBy);
      g.add_relationship(rk, stack.back().second, {id});
    }
    stack.emplace_back(depth, id);
    if (r.anomaly) out.anomalies.push_back(*r.anomaly);
  }

  if (mode == ProseMode::kStrict && !out.anomalies.empty()) {
    throw ProseParseError(out.anomalies);
  }
  assign_depths(g);
  return out;
}

namespace {

std::string tag_group(const GsnGraph& g, const Element& e,
                      std::optional<RelationKind> via) {
  std::vector<std::string> tags;
  if (via == RelationKind::kInContextOf) {
    tags.emplace_back("InContextOf");
  } else if (via == RelationKind::kSupportedBy && is_contextual_kind(e.kind)) {
    tags.emplace_back("SupportedBy");
  }
  for (Decorator d : e.decorators.to_vector()) tags.emplace_back(to_string(d));
  if (e.has_placeholder && !description_has_placeholder(e.description)) {
    tags.emplace_back("HasPlaceholder");
  }
  for (const PatternAnnotation& a : g.annotations()) {
    if (a.source != e.id) continue;
    std::string t = std::string(to_string(a.kind)) + " [";
    for (std::size_t i = 0; i < a.targets.size(); ++i) {
      if (i) t += ", ";
      t += a.targets[i];
    }
    t += "]";
    if (a.label) t += " " + a.label->to_string();
    tags.push_back(std::move(t));
  }
  if (tags.empty()) return "";
  std::string out = " (";
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (i) out += ", ";
    out += tags[i];
  }
  return out + ")";
}

}  // namespace

std::string render_prose(const GsnGraph& graph) {
  try {
    compute_depths(graph, false);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNotATree, e.what());
  }
  std::ostringstream out;
  std::set<std::string> visited;

  std::function<void(const Element&, std::size_t, std::optional<RelationKind>)>
      walk = [&](const Element& e, std::size_t dashes,
                 std::optional<RelationKind> via) {
        visited.insert(e.id);
        out << std::string(dashes, '-') << (dashes ? " " : "")
            << to_string(e.kind) << " " << e.id << tag_group(graph, e, via)
            << ": " << e.description << "\n";
        for (RelationKind kind :
             {RelationKind::kInContextOf, RelationKind::kSupportedBy}) {
          const Relationship* r = graph.find_relationship(kind, e.id);
          if (r == nullptr) continue;
          for (const std::string& t : r->targets) {
            if (const Element* child = graph.find(t)) walk(*child, dashes + 1, kind);
          }
        }
      };

  for (const std::string& id : root_candidates(graph)) walk(*graph.find(id), 0, std::nullopt);
  for (const std::string& id : free_contextual_elements(graph)) {
    walk(*graph.find(id), 0, std::nullopt);
  }
  for (const Element& e : graph.elements()) {
    if (visited.count(e.id) == 0) {
      throw Error(ErrorCode::kNotATree, "'" + e.id + "' is unreachable");
    }
  }
  return out.str();
}

}  // namespace gsnforge
