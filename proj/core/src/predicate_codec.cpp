#include "gsnforge/predicate_codec.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "gsnforge/errors.hpp"

namespace gsnforge {

namespace {

struct HeadName {
  PredicateHead head;
  std::string_view name;
};

constexpr HeadName kHeads[] = {
    {PredicateHead::kGoal, "Goal"},
    {PredicateHead::kStrategy, "Strategy"},
    {PredicateHead::kSolution, "Solution"},
    {PredicateHead::kContext, "Context"},
    {PredicateHead::kAssumption, "Assumption"},
    {PredicateHead::kJustification, "Justification"},
    {PredicateHead::kUndeveloped, "Undeveloped"},
    {PredicateHead::kUninstantiated, "Uninstantiated"},
    {PredicateHead::kUndevelopStantiated, "UndevelopStantiated"},
    {PredicateHead::kHasPlaceholder, "HasPlaceholder"},
    {PredicateHead::kHasChoice, "HasChoice"},
    {PredicateHead::kHasMultiplicity, "HasMultiplicity"},
    {PredicateHead::kIsOptional, "IsOptional"},
    {PredicateHead::kInContextOf, "InContextOf"},
    {PredicateHead::kSupportedBy, "SupportedBy"},
};

bool is_element_head(PredicateHead h) {
  return h <= PredicateHead::kJustification;
}

bool is_flag_head(PredicateHead h) {
  return h >= PredicateHead::kUndeveloped && h <= PredicateHead::kHasPlaceholder;
}

bool is_annotation_head(PredicateHead h) {
  return h >= PredicateHead::kHasChoice && h <= PredicateHead::kIsOptional;
}

ElementKind element_kind_of(PredicateHead h) {
  return static_cast<ElementKind>(static_cast<int>(h));
}

bool is_id_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
}

bool is_head_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return at_end() ? '\0' : line_[pos_]; }
  std::size_t column() const { return pos_ + 1; }

  void skip_ws() {
    while (!at_end() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SourceError(ErrorCode::kSyntaxError, line_no_,
                      std::min(column(), line_.size() + 1),
                      "expected " + expected);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  std::string_view take_while(bool (*pred)(char)) {
    std::size_t start = pos_;
    while (!at_end() && pred(line_[pos_])) ++pos_;
    return line_.substr(start, pos_ - start);
  }

  std::string id() {
    skip_ws();
    std::string_view s = take_while(is_id_char);
    if (s.empty()) fail("element id");
    return std::string(s);
  }

  std::vector<std::string> id_list() {
    skip_ws();
    std::vector<std::string> ids;
    if (peek() != '[') {
      ids.push_back(id());
      return ids;
    }
    ++pos_;
    skip_ws();
    if (peek() == ']') fail("element id");
    while (true) {
      ids.push_back(id());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        return ids;
      }
      fail("',' or ']'");
    }
  }

  // Raw text up to the next ',' or ')' at this nesting level.
  std::string_view raw_arg() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && line_[pos_] != ',' && line_[pos_] != ')') ++pos_;
    return text::trim(line_.substr(start, pos_ - start));
  }

  std::string description() {
    std::string out;
    skip_ws();
    while (!at_end()) {
      char c = line_[pos_];
      if (c == '\\' && pos_ + 1 < line_.size()) {
        char n = line_[pos_ + 1];
        if (n == ')' || n == '(' || n == '\\') {
          out.push_back(n);
          pos_ += 2;
          continue;
        }
      }
      if (c == ')') break;
      out.push_back(c);
      ++pos_;
    }
    if (at_end()) fail("')' closing the description");
    return std::string(text::trim(out));
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

[[noreturn]] void arity_error(const LineCursor& cur, PredicateHead head,
                              const std::string& detail) {
  throw SourceError(ErrorCode::kArityMismatch, cur.line_no(), cur.column(),
                    std::string(to_string(head)) + " " + detail);
}

PredicateStatement parse_line(std::string_view line, std::size_t line_no) {
  LineCursor cur(line, line_no);
  cur.skip_ws();
  PredicateStatement st;
  st.line = line_no;
  st.column = cur.column();
  std::string_view name = cur.take_while(is_head_char);
  if (name.empty()) cur.fail("predicate name");
  auto head = parse_predicate_head(name);
  if (!head) {
    throw SourceError(ErrorCode::kUnknownPredicate, line_no, st.column,
                      "unknown predicate '" + std::string(name) + "'");
  }
  st.head = *head;
  cur.expect('(');
  st.subject = cur.id();
  cur.skip_ws();

  if (is_flag_head(st.head)) {
    if (cur.peek() == ',') arity_error(cur, st.head, "takes one argument");
  } else if (is_element_head(st.head)) {
    if (cur.peek() != ',') arity_error(cur, st.head, "needs an id and a description");
    cur.expect(',');
    st.description = cur.description();
  } else {
    if (cur.peek() != ',') arity_error(cur, st.head, "needs a source and targets");
    cur.expect(',');
    st.targets = cur.id_list();
    cur.skip_ws();
    std::size_t extra = 0;
    while (cur.peek() == ',') {
      cur.expect(',');
      std::size_t col = cur.column();
      std::string_view arg = cur.raw_arg();
      ++extra;
      if (is_annotation_head(st.head)) {
        if (extra > 1) arity_error(cur, st.head, "takes at most three arguments");
        auto label = Cardinality::parse(arg);
        if (!label) {
          throw SourceError(ErrorCode::kMalformedCardinality, line_no, col,
                            "malformed cardinality '" + std::string(arg) + "'");
        }
        st.label = label;
      } else if (extra == 1) {
        int d = 0;
        auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), d);
        if (ec != std::errc{} || p != arg.data() + arg.size() || d < 1) {
          throw SourceError(ErrorCode::kSyntaxError, line_no, col,
                            "expected a positive depth");
        }
        st.depth = d;
      } else if (extra == 2 && st.head == PredicateHead::kInContextOf) {
        if (arg == "left") {
          st.side = ContextSide::kLeft;
        } else if (arg == "right") {
          st.side = ContextSide::kRight;
        } else {
          throw SourceError(ErrorCode::kSyntaxError, line_no, col,
                            "expected 'left' or 'right'");
        }
      } else {
        arity_error(cur, st.head, "has too many arguments");
      }
      cur.skip_ws();
    }
  }
  cur.expect(')');
  cur.skip_ws();
  if (!cur.at_end()) cur.fail("end of line");
  return st;
}

std::string escape_description(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '(' || c == ')' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  out += "]";
  return out;
}

}  // namespace

std::optional<PredicateHead> parse_predicate_head(std::string_view name) {
  if (name == "IncontextOf") return PredicateHead::kInContextOf;
  for (const HeadName& h : kHeads) {
    if (h.name == name) return h.head;
  }
  return std::nullopt;
}

std::string_view to_string(PredicateHead head) {
  for (const HeadName& h : kHeads) {
    if (h.head == head) return h.name;
  }
  return "?";
}

PredicateDocument parse_statements(std::string_view text) {
  PredicateDocument doc;
  auto lines = text::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view t = text::trim(lines[i]);
    if (t.empty() || t.front() == '#') continue;
    doc.statements.push_back(parse_line(lines[i], i + 1));
  }
  return doc;
}

PredicateParse build_graph(const PredicateDocument& document) {
  PredicateParse out;
  GsnGraph& g = out.graph;
  std::map<std::string, std::size_t> flagged;

  for (const PredicateStatement& st : document.statements) {
    if (!is_element_head(st.head)) continue;
    if (g.contains(st.subject)) {
      throw SourceError(ErrorCode::kDuplicateId, st.line, st.column,
                        "duplicate id '" + st.subject + "'");
    }
    Element e;
    e.id = st.subject;
    e.kind = element_kind_of(st.head);
    e.description = st.description;
    e.has_placeholder = description_has_placeholder(e.description);
    g.add_element(std::move(e));
  }

  auto require = [&](const PredicateStatement& st, const std::string& id) {
    if (!g.contains(id)) {
      throw SourceError(ErrorCode::kDanglingReference, st.line, st.column,
                        "reference to undeclared id '" + id + "'");
    }
  };

  bool missing_depth = false;
  for (const PredicateStatement& st : document.statements) {
    if (is_element_head(st.head)) continue;
    require(st, st.subject);
    for (const std::string& t : st.targets) require(st, t);
    switch (st.head) {
      case PredicateHead::kUndeveloped:
        g.find(st.subject)->decorators.insert(Decorator::kUndeveloped);
        break;
      case PredicateHead::kUninstantiated:
        g.find(st.subject)->decorators.insert(Decorator::kUninstantiated);
        break;
      case PredicateHead::kUndevelopStantiated:
        g.find(st.subject)->decorators.insert(Decorator::kUndevelopStantiated);
        break;
      case PredicateHead::kHasPlaceholder:
        flagged.emplace(st.subject, st.line);
        break;
      case PredicateHead::kHasChoice:
      case PredicateHead::kHasMultiplicity:
      case PredicateHead::kIsOptional: {
        AnnotationKind kind = st.head == PredicateHead::kHasChoice
                                  ? AnnotationKind::kChoice
                              : st.head == PredicateHead::kHasMultiplicity
                                  ? AnnotationKind::kMultiplicity
                                  : AnnotationKind::kOptional;
        g.add_annotation(PatternAnnotation{kind, st.subject, st.targets, st.label});
        break;
      }
      case PredicateHead::kInContextOf:
      case PredicateHead::kSupportedBy: {
        RelationKind kind = st.head == PredicateHead::kSupportedBy
                                ? RelationKind::kSupportedBy
                                : RelationKind::kInContextOf;
        g.add_relationship(kind, st.subject, st.targets, st.depth.value_or(0));
        missing_depth = missing_depth || !st.depth;
        if (st.side) {
          for (Relationship& r : g.relationships()) {
            if (r.kind == kind && r.source == st.subject) r.side = st.side;
          }
        }
        break;
      }
      default:
        break;
    }
  }

  for (const PredicateStatement& st : document.statements) {
    if (!is_element_head(st.head)) continue;
    Element* e = g.find(st.subject);
    auto it = flagged.find(st.subject);
    if (e->has_placeholder && it == flagged.end()) {
      out.warnings.push_back(
          {st.line, "'" + st.subject + "' has a placeholder but no HasPlaceholder"});
    } else if (!e->has_placeholder && it != flagged.end()) {
      out.warnings.push_back(
          {it->second, "HasPlaceholder(" + st.subject + ") without a {} span"});
      e->has_placeholder = true;
    }
  }

  if (missing_depth) {
    try {
      DepthMap depths = compute_depths(g, false);
      for (Relationship& r : g.relationships()) {
        if (r.depth == 0) r.depth = depths.at(r.source);
      }
    } catch (const Error&) {
      // cyclic input keeps unknown depths; the validator reports it
    }
  }
  return out;
}

PredicateParse parse_document(std::string_view text) {
  return build_graph(parse_statements(text));
}

std::string serialize_predicates(const GsnGraph& graph) {
  std::map<std::string, int, text::NaturalLess> depth_of;
  try {
    for (const auto& [id, d] : compute_depths(graph, false)) depth_of[id] = d;
  } catch (const Error&) {
  }
  auto depth = [&](const std::string& id) {
    auto it = depth_of.find(id);
    return it == depth_of.end() ? 0 : it->second;
  };

  std::vector<const Element*> elements;
  for (const Element& e : graph.elements()) elements.push_back(&e);
  std::stable_sort(elements.begin(), elements.end(),
                   [&](const Element* a, const Element* b) {
                     int da = depth(a->id);
                     int db = depth(b->id);
                     if (da != db) return da < db;
                     return text::natural_less(a->id, b->id);
                   });

  std::ostringstream out;
  for (const Element* e : elements) {
    out << to_string(e->kind) << " (" << e->id << ", "
        << escape_description(e->description) << ")\n";
  }
  for (const Element* e : elements) {
    for (Decorator d : e->decorators.to_vector()) {
      out << to_string(d) << "(" << e->id << ")\n";
    }
  }
  for (const Element* e : elements) {
    if (e->has_placeholder) out << "HasPlaceholder(" << e->id << ")\n";
  }

  std::vector<const Relationship*> rels;
  for (const Relationship& r : graph.relationships()) rels.push_back(&r);
  std::stable_sort(rels.begin(), rels.end(),
                   [&](const Relationship* a, const Relationship* b) {
                     if (a->depth != b->depth) return a->depth < b->depth;
                     if (a->source != b->source) {
                       return text::natural_less(a->source, b->source);
                     }
                     return a->kind < b->kind;
                   });
  for (const Relationship* r : rels) {
    out << to_string(r->kind) << " (" << r->source << ", "
        << join_ids(r->targets);
    if (r->depth > 0) out << ", " << r->depth;
    if (r->depth > 0 && r->side && r->kind == RelationKind::kInContextOf) {
      out << ", " << (*r->side == ContextSide::kLeft ? "left" : "right");
    }
    out << ")\n";
  }
  for (const PatternAnnotation& a : graph.annotations()) {
    out << to_string(a.kind) << " (" << a.source << ", " << join_ids(a.targets);
    if (a.label) out << ", " << a.label->to_string();
    out << ")\n";
  }
  return out.str();
}

}  // namespace gsnforge
