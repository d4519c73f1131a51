#include "gpdkit/speclang.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gpdkit/constructors.hpp"

namespace gpdkit::speclang {

namespace {

constexpr std::array<std::string_view, 12> kKeywords = {
    "groupoid", "objects", "arrows",     "comp",  "pair",    "group",
    "action",   "union",   "restrict", "eventspace", "frame", "identify"};

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '+' || c == '-';
}

std::string describe_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x21 && u < 0x7f) return std::string("'") + c + "'";
  std::ostringstream os;
  os << "byte 0x" << std::hex << static_cast<unsigned>(u);
  return os.str();
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string to_string(const Location& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

UnexpectedCharacter::UnexpectedCharacter(Location loc, char c)
    : Error(to_string(loc) + ": unexpected character " + describe_char(c)), loc_(loc) {}

namespace {

std::string syntax_message(SyntaxReason reason, const Location& loc,
                           const std::vector<std::string>& expected, const std::string& found) {
  std::string msg = to_string(loc) + ": ";
  switch (reason) {
    case SyntaxReason::unexpected_token:
      msg += "expected " + join(expected, " or ") + ", found " + found;
      break;
    case SyntaxReason::unknown_name:
      msg += "unknown name '" + found + "'";
      if (!expected.empty()) msg += " (expected " + join(expected, " or ") + ")";
      break;
    case SyntaxReason::duplicate_name:
      msg += "name '" + found + "' is already declared";
      break;
  }
  return msg;
}

}  // namespace

SyntaxError::SyntaxError(SyntaxReason reason, Location loc, std::vector<std::string> expected,
                         std::string found)
    : Error(syntax_message(reason, loc, expected, found)),
      reason_(reason),
      loc_(loc),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ElaborationError::ElaborationError(ElaborationKind kind, Span span, const std::string& message)
    : Error(to_string(span.begin) + ": " + message), kind_(kind), span_(span) {}

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_valid_name(std::string_view word) {
  if (word.empty() || is_keyword(word)) return false;
  if (!std::all_of(word.begin(), word.end(), is_name_char)) return false;
  return word.find("->") == std::string_view::npos;
}

// ---------------------------------------------------------------------------
// Lexer

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  Location loc;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (text[loc.offset] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
      ++loc.offset;
    }
  };
  auto emit = [&](TokenKind kind, std::size_t length) {
    Token t{kind, std::string(text.substr(loc.offset, length)), {loc, loc}};
    advance(length);
    t.span.end = loc;
    out.push_back(std::move(t));
  };

  while (loc.offset < text.size()) {
    const char c = text[loc.offset];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
    } else if (c == '#') {
      while (loc.offset < text.size() && text[loc.offset] != '\n') advance(1);
    } else if (c == '-' && loc.offset + 1 < text.size() && text[loc.offset + 1] == '>') {
      emit(TokenKind::punct, 2);
    } else if (is_name_char(c)) {
      std::size_t end = loc.offset;
      while (end < text.size() && is_name_char(text[end])) {
        if (text[end] == '-' && end + 1 < text.size() && text[end + 1] == '>') break;
        ++end;
      }
      const auto word = text.substr(loc.offset, end - loc.offset);
      emit(is_keyword(word) ? TokenKind::keyword : TokenKind::identifier, end - loc.offset);
    } else if (std::string_view("{}:;,()~.=").find(c) != std::string_view::npos) {
      emit(TokenKind::punct, 1);
    } else {
      throw UnexpectedCharacter(loc, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

const Name& Declaration::name() const {
  return std::visit([](const auto& d) -> const Name& { return d.name; }, body);
}

namespace {

enum class DeclKind { groupoid, group, event_space };

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    if (!tokens_.empty()) eof_ = tokens_.back().span.end;
  }

  SpecAst parse_file() {
    SpecAst ast;
    while (!at_end()) ast.declarations.push_back(parse_decl());
    return ast;
  }

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  Location eof_;
  Location last_end_;
  std::map<std::string, DeclKind> declared_;

  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
  }
  Location here() const { return at_end() ? eof_ : tokens_[pos_].span.begin; }
  std::string found() const { return at_end() ? "end of input" : "'" + tokens_[pos_].text + "'"; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(SyntaxReason::unexpected_token, here(), std::move(expected), found());
  }

  bool check(std::string_view text) const {
    const Token* t = peek();
    return t && t->kind != TokenKind::identifier && t->text == text;
  }
  bool check_word(std::string_view text) const {
    const Token* t = peek();
    return t && t->kind == TokenKind::identifier && t->text == text;
  }
  bool check_name() const {
    const Token* t = peek();
    return t && t->kind == TokenKind::identifier;
  }

  const Token& take() {
    const Token& t = tokens_[pos_++];
    last_end_ = t.span.end;
    return t;
  }

  void expect(std::string_view text) {
    if (!check(text)) fail({"'" + std::string(text) + "'"});
    take();
  }
  void expect_word(std::string_view text) {
    if (!check_word(text)) fail({"'" + std::string(text) + "'"});
    take();
  }

  Name name() {
    if (!check_name()) fail({"name"});
    const Token& t = take();
    return {t.text, t.span};
  }

  std::vector<Name> namelist() {
    std::vector<Name> out{name()};
    while (check(",")) {
      take();
      out.push_back(name());
    }
    return out;
  }

  Name reference(DeclKind kind, const char* what) {
    if (!check_name()) fail({std::string(what) + " name"});
    const Location at = here();
    Name n = name();
    auto it = declared_.find(n.text);
    // A group also stands for its one-object groupoid.
    const bool fits = it != declared_.end() &&
                      (it->second == kind || (kind == DeclKind::groupoid && it->second == DeclKind::group));
    if (!fits) {
      throw SyntaxError(SyntaxReason::unknown_name, at, {std::string("declared ") + what}, n.text);
    }
    return n;
  }

  Declaration parse_decl() {
    const Location begin = here();
    Declaration d{parse_body(), {begin, begin}};
    d.span.end = last_end_;
    return d;
  }

  DeclBody parse_body() {
    const Token* t = peek();
    if (t && t->kind == TokenKind::keyword) {
      if (t->text == "groupoid") return parse_explicit();
      if (t->text == "pair") return parse_pair();
      if (t->text == "group") return parse_group();
      if (t->text == "action") return parse_action();
      if (t->text == "union") return parse_union();
      if (t->text == "restrict") return parse_restrict();
      if (t->text == "eventspace") return parse_event_space();
    }
    fail({"'groupoid'", "'pair'", "'group'", "'action'", "'union'", "'restrict'", "'eventspace'"});
  }

  // The header name is registered after the body so a declaration cannot
  // refer to itself.
  template <class F>
  Name with_pending_name(DeclKind kind, F body) {
    const Location at = here();
    Name n = name();
    if (declared_.count(n.text)) throw SyntaxError(SyntaxReason::duplicate_name, at, {}, n.text);
    body();
    declared_.emplace(n.text, kind);
    return n;
  }

  ExplicitGroupoid parse_explicit() {
    take();
    ExplicitGroupoid g;
    g.name = with_pending_name(DeclKind::groupoid, [&] {
      expect("{");
      expect("objects");
      expect(":");
      g.objects = namelist();
      expect(";");
      if (check("arrows")) {
        take();
        expect(":");
        do {
          ArrowDecl a;
          a.name = name();
          expect(":");
          a.source = name();
          expect("->");
          a.target = name();
          expect(";");
          g.arrows.push_back(std::move(a));
        } while (check_name());
      }
      if (check("comp")) {
        take();
        expect(":");
        do {
          CompRow r;
          r.span.begin = here();
          r.left = name();
          expect(".");
          r.right = name();
          expect("=");
          if (check_word("unit") && peek(1) && peek(1)->text == "(" &&
              peek(1)->kind == TokenKind::punct) {
            take();
            expect("(");
            r.result = name();
            expect(")");
            r.result_is_unit = true;
          } else {
            r.result = name();
          }
          r.span.end = last_end_;
          expect(";");
          g.rows.push_back(std::move(r));
        } while (check_name());
      }
      if (!check("}")) {
        std::vector<std::string> expected;
        if (g.rows.empty()) {
          if (g.arrows.empty()) expected.push_back("'arrows'");
          expected.push_back("'comp'");
        }
        expected.push_back("'}'");
        fail(std::move(expected));
      }
      take();
    });
    return g;
  }

  PairGroupoid parse_pair() {
    take();
    PairGroupoid p;
    p.name = with_pending_name(DeclKind::groupoid, [&] {
      expect("{");
      p.labels = namelist();
      expect("}");
    });
    return p;
  }

  GroupDecl parse_group() {
    take();
    GroupDecl g;
    g.name = with_pending_name(DeclKind::group, [&] {
      expect("{");
      g.identity = name();
      expect(";");
      do {
        expect_word("row");
        expect(":");
        g.rows.push_back(namelist());
        expect(";");
      } while (check_word("row"));
      if (!check("}")) fail({"'row'", "'}'"});
      take();
    });
    return g;
  }

  ActionGroupoid parse_action() {
    take();
    ActionGroupoid a;
    a.name = with_pending_name(DeclKind::groupoid, [&] {
      expect("{");
      a.group = reference(DeclKind::group, "group");
      expect(";");
      a.points = namelist();
      expect(";");
      do {
        expect_word("map");
        ActionMap m;
        m.element = name();
        m.point = name();
        expect("->");
        m.image = name();
        expect(";");
        a.maps.push_back(std::move(m));
      } while (check_word("map"));
      if (!check("}")) fail({"'map'", "'}'"});
      take();
    });
    return a;
  }

  DisjointUnion parse_union() {
    take();
    DisjointUnion u;
    u.name = with_pending_name(DeclKind::groupoid, [&] {
      expect("{");
      u.parts.push_back(reference(DeclKind::groupoid, "groupoid"));
      while (check(",")) {
        take();
        u.parts.push_back(reference(DeclKind::groupoid, "groupoid"));
      }
      expect("}");
    });
    return u;
  }

  Restrict parse_restrict() {
    take();
    Restrict r;
    r.name = with_pending_name(DeclKind::groupoid, [&] {
      expect("{");
      r.base = reference(DeclKind::groupoid, "groupoid");
      expect(";");
      r.objects = namelist();
      expect("}");
    });
    return r;
  }

  EventSpaceDecl parse_event_space() {
    take();
    EventSpaceDecl e;
    e.name = with_pending_name(DeclKind::event_space, [&] {
      expect("{");
      do {
        expect("frame");
        FrameDecl f;
        f.label = name();
        expect("{");
        f.events = namelist();
        expect("}");
        e.frames.push_back(std::move(f));
      } while (check("frame"));
      while (check("identify")) {
        take();
        IdentifyDecl id;
        id.frame1 = name();
        expect(".");
        id.event1 = name();
        expect("~");
        id.frame2 = name();
        expect(".");
        id.event2 = name();
        expect(";");
        e.identifications.push_back(std::move(id));
      }
      if (!check("}")) fail(e.identifications.empty()
                                ? std::vector<std::string>{"'frame'", "'identify'", "'}'"}
                                : std::vector<std::string>{"'identify'", "'}'"});
      take();
    });
    return e;
  }
};

}  // namespace

SpecAst parse(const std::vector<Token>& tokens) { return Parser(tokens).parse_file(); }

SpecAst parse(std::string_view text) { return parse(tokenize(text)); }

// ---------------------------------------------------------------------------
// Elaboration

const FiniteGroupoid* Elaboration::groupoid(const std::string& name) const {
  auto it = values.find(name);
  return it == values.end() ? nullptr : std::get_if<FiniteGroupoid>(&it->second);
}

const EventSpace* Elaboration::event_space(const std::string& name) const {
  auto it = values.find(name);
  return it == values.end() ? nullptr : std::get_if<EventSpace>(&it->second);
}

namespace {

[[noreturn]] void unknown(const Name& n, const std::string& what) {
  throw ElaborationError(ElaborationKind::unknown_name, n.span, "unknown " + what + " '" + n.text + "'");
}

[[noreturn]] void violation(const Span& span, const std::string& message) {
  throw ElaborationError(ElaborationKind::axiom_violation, span, message);
}

Span whole(const Name& first, const Name& last) { return {first.span.begin, last.span.end}; }

class LabelIndex {
 public:
  LabelIndex(const std::vector<Name>& names, const std::string& what) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!index_.emplace(names[i].text, i).second) {
        violation(names[i].span, "duplicate " + what + " '" + names[i].text + "'");
      }
    }
    what_ = what;
  }

  std::size_t at(const Name& n) const {
    auto it = index_.find(n.text);
    if (it == index_.end()) unknown(n, what_);
    return it->second;
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::string what_;
};

std::vector<std::string> texts(const std::vector<Name>& names) {
  std::vector<std::string> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(n.text);
  return out;
}

FiniteGroupoid elaborate_explicit(const ExplicitGroupoid& decl, const Span& span) {
  const LabelIndex objects(decl.objects, "object");
  const std::size_t n = decl.objects.size();

  GroupoidTables t;
  t.object_labels = texts(decl.objects);
  std::unordered_map<std::string, MorphismIndex> morphism;
  auto add = [&](const std::string& label, ObjectIndex s, ObjectIndex tg, const Span& where) {
    if (!morphism.emplace(label, t.morphism_labels.size()).second) {
      violation(where, "duplicate morphism label '" + label + "'");
    }
    t.morphism_labels.push_back(label);
    t.source.push_back(s);
    t.target.push_back(tg);
    return t.morphism_labels.size() - 1;
  };
  for (ObjectIndex x = 0; x < n; ++x) add("1_" + decl.objects[x].text, x, x, decl.objects[x].span);

  std::vector<MorphismIndex> declared;
  for (const auto& a : decl.arrows) {
    declared.push_back(add(a.name.text, objects.at(a.source), objects.at(a.target), a.name.span));
  }

  // Pair each declared arrow with a declared inverse when a row says so.
  auto find_declared = [&](const std::string& label) -> std::optional<MorphismIndex> {
    auto it = morphism.find(label);
    if (it == morphism.end() || it->second < n) return std::nullopt;
    return it->second;
  };
  std::vector<std::optional<MorphismIndex>> inv(t.morphism_labels.size());
  for (auto f : declared) {
    for (const auto& row : decl.rows) {
      if (row.left.text != t.morphism_labels[f] || !row.result_is_unit) continue;
      if (row.result.text != decl.objects[t.target[f]].text) continue;
      if (auto g = find_declared(row.right.text)) {
        inv[f] = *g;
        break;
      }
    }
  }
  for (auto f : declared) {
    if (inv[f]) continue;
    for (auto h : declared) {
      if (inv[h] == f) {
        inv[f] = h;
        break;
      }
    }
  }
  std::vector<std::pair<MorphismIndex, MorphismIndex>> formal;
  for (std::size_t k = 0; k < declared.size(); ++k) {
    const auto f = declared[k];
    if (inv[f]) continue;
    const auto fi = add(t.morphism_labels[f] + "Inv", t.target[f], t.source[f], decl.arrows[k].name.span);
    inv.resize(t.morphism_labels.size());
    inv[f] = fi;
    inv[fi] = f;
    formal.emplace_back(f, fi);
  }

  const std::size_t N = t.morphism_labels.size();
  t.unit.resize(n);
  for (ObjectIndex x = 0; x < n; ++x) t.unit[x] = x;
  t.inverse.resize(N);
  for (MorphismIndex m = 0; m < N; ++m) t.inverse[m] = m < n ? m : *inv[m];

  std::map<std::pair<MorphismIndex, MorphismIndex>, MorphismIndex> comp;
  auto put = [&](MorphismIndex i, MorphismIndex j, MorphismIndex k, const Span& where) {
    auto [it, inserted] = comp.emplace(std::pair{i, j}, k);
    if (!inserted && it->second != k) {
      violation(where, "conflicting results for " + t.morphism_labels[i] + " . " + t.morphism_labels[j]);
    }
  };
  for (MorphismIndex m = 0; m < N; ++m) {
    put(t.target[m], m, m, span);
    put(m, t.source[m], m, span);
  }
  for (auto [f, fi] : formal) {
    put(f, fi, t.target[f], span);
    put(fi, f, t.source[f], span);
  }

  auto lookup = [&](const Name& nm) {
    auto it = morphism.find(nm.text);
    if (it == morphism.end()) unknown(nm, "arrow");
    return it->second;
  };
  for (const auto& row : decl.rows) {
    const auto i = lookup(row.left);
    const auto j = lookup(row.right);
    const auto k = row.result_is_unit ? objects.at(row.result) : lookup(row.result);
    if (t.source[i] != t.target[j]) {
      violation(row.span, "row " + row.left.text + " . " + row.right.text + " composes arrows that do not meet");
    }
    put(i, j, k, row.span);
  }

  for (MorphismIndex i = 0; i < N; ++i) {
    for (MorphismIndex j = 0; j < N; ++j) {
      if (t.source[i] == t.target[j] && !comp.count({i, j})) {
        throw ElaborationError(ElaborationKind::not_closed, span,
                               "groupoid '" + decl.name.text + "' is not closed: no row for " +
                                   t.morphism_labels[i] + " . " + t.morphism_labels[j]);
      }
    }
  }
  for (const auto& [key, k] : comp) t.comp.push_back({key.first, key.second, k});

  try {
    return FiniteGroupoid::create(std::move(t));
  } catch (const AxiomViolation& e) {
    violation(span, "groupoid '" + decl.name.text + "': " + e.what());
  } catch (const Error& e) {
    violation(span, "groupoid '" + decl.name.text + "': " + e.what());
  }
}

GroupTable elaborate_group(const GroupDecl& decl, const Span& span) {
  const auto& first = decl.rows.front();
  const LabelIndex elements(first, "group element");
  const std::size_t n = first.size();
  if (first.front().text != decl.identity.text) {
    violation(decl.identity.span, "identity '" + decl.identity.text +
                                      "' must be the first element of the first row");
  }
  if (decl.rows.size() != n) {
    violation(span, "group '" + decl.name.text + "' needs " + std::to_string(n) + " rows, found " +
                        std::to_string(decl.rows.size()));
  }
  std::vector<std::vector<std::size_t>> mult(n);
  for (const auto& row : decl.rows) {
    if (row.size() != n) violation(whole(row.front(), row.back()), "row length differs from the element count");
    const auto g = elements.at(row.front());
    if (!mult[g].empty()) violation(row.front().span, "duplicate row for element '" + row.front().text + "'");
    for (const auto& entry : row) mult[g].push_back(elements.at(entry));
  }
  try {
    return GroupTable::create(texts(first), std::move(mult));
  } catch (const Error& e) {
    violation(span, "group '" + decl.name.text + "': " + e.what());
  }
}

FiniteGroupoid elaborate_action(const ActionGroupoid& decl, const GroupTable& group, const Span& span) {
  const LabelIndex points(decl.points, "point");
  std::unordered_map<std::string, std::size_t> element;
  for (std::size_t g = 0; g < group.order(); ++g) element.emplace(group.label(g), g);

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> act(group.order(), std::vector<std::size_t>(decl.points.size(), kNone));
  for (const auto& m : decl.maps) {
    auto it = element.find(m.element.text);
    if (it == element.end()) unknown(m.element, "group element");
    const auto x = points.at(m.point);
    const auto y = points.at(m.image);
    auto& slot = act[it->second][x];
    if (slot != kNone && slot != y) {
      violation(whole(m.element, m.image), "conflicting images for " + m.element.text + " " + m.point.text);
    }
    slot = y;
  }
  for (std::size_t g = 0; g < group.order(); ++g) {
    for (std::size_t x = 0; x < decl.points.size(); ++x) {
      if (act[g][x] == kNone) {
        throw ElaborationError(ElaborationKind::not_closed, span,
                               "action '" + decl.name.text + "' has no map for " + group.label(g) + " " +
                                   decl.points[x].text);
      }
    }
  }
  try {
    return action_groupoid(ActionSpec::create(group, texts(decl.points), std::move(act)));
  } catch (const Error& e) {
    violation(span, "action '" + decl.name.text + "': " + e.what());
  }
}

EventSpace elaborate_event_space(const EventSpaceDecl& decl, const Span& span) {
  std::vector<Frame> frames;
  for (const auto& f : decl.frames) frames.push_back({f.label.text, texts(f.events)});
  std::vector<Identification> ids;
  for (const auto& id : decl.identifications) {
    ids.emplace_back(EventRef{id.frame1.text, id.event1.text}, EventRef{id.frame2.text, id.event2.text});
  }
  try {
    return build_event_space(std::move(frames), std::move(ids));
  } catch (const UnknownEvent& e) {
    // Point at the first offending reference.
    for (const auto& id : decl.identifications) {
      for (auto [fr, ev] : {std::pair{&id.frame1, &id.event1}, std::pair{&id.frame2, &id.event2}}) {
        auto f = std::find_if(decl.frames.begin(), decl.frames.end(),
                              [&](const FrameDecl& d) { return d.label.text == fr->text; });
        if (f == decl.frames.end()) unknown(*fr, "frame");
        if (std::none_of(f->events.begin(), f->events.end(),
                         [&](const Name& e2) { return e2.text == ev->text; })) {
          unknown(*ev, "event");
        }
      }
    }
    throw ElaborationError(ElaborationKind::unknown_name, span, e.what());
  } catch (const Error& e) {
    violation(span, "event space '" + decl.name.text + "': " + e.what());
  }
}

}  // namespace

Elaboration elaborate(const SpecAst& ast) {
  Elaboration out;
  std::map<std::string, GroupTable> groups;

  auto groupoid_ref = [&](const Name& n) -> const FiniteGroupoid& {
    const FiniteGroupoid* g = out.groupoid(n.text);
    if (!g) unknown(n, "groupoid");
    return *g;
  };

  for (const auto& d : ast.declarations) {
    const std::string& name = d.name().text;
    if (out.contains(name) || groups.count(name)) {
      violation(d.name().span, "name '" + name + "' is already declared");
    }
    std::optional<Value> value;
    std::optional<GroupTable> group;
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ExplicitGroupoid>) {
            value = elaborate_explicit(node, d.span);
          } else if constexpr (std::is_same_v<T, PairGroupoid>) {
            (void)LabelIndex(node.labels, "object");
            value = pair_groupoid(texts(node.labels));
          } else if constexpr (std::is_same_v<T, GroupDecl>) {
            group = elaborate_group(node, d.span);
            value = group_as_groupoid(*group);
          } else if constexpr (std::is_same_v<T, ActionGroupoid>) {
            auto it = groups.find(node.group.text);
            if (it == groups.end()) unknown(node.group, "group");
            value = elaborate_action(node, it->second, d.span);
          } else if constexpr (std::is_same_v<T, DisjointUnion>) {
            FiniteGroupoid acc = groupoid_ref(node.parts.front());
            for (std::size_t k = 1; k < node.parts.size(); ++k) {
              acc = disjoint_union(acc, groupoid_ref(node.parts[k]));
            }
            value = std::move(acc);
          } else if constexpr (std::is_same_v<T, Restrict>) {
            const FiniteGroupoid& base = groupoid_ref(node.base);
            std::vector<ObjectIndex> subset;
            for (const auto& o : node.objects) {
              auto x = base.find_object(o.text);
              if (!x) unknown(o, "object");
              if (std::find(subset.begin(), subset.end(), *x) == subset.end()) subset.push_back(*x);
            }
            value = restrict(base, subset);
          } else {
            value = elaborate_event_space(node, d.span);
          }
        },
        d.body);
    if (group) groups.emplace(name, std::move(*group));
    out.order.push_back(name);
    out.values.emplace(name, std::move(*value));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

// Maps arbitrary labels to distinct valid names, keeping valid ones intact
// where possible.
class NameMap {
 public:
  explicit NameMap(std::set<std::string> reserved = {}) : used_(std::move(reserved)) {}

  std::string operator()(const std::string& label) {
    std::string base = sanitize(label);
    std::string candidate = base;
    for (int k = 2; used_.count(candidate); ++k) candidate = base + "_" + std::to_string(k);
    used_.insert(candidate);
    return candidate;
  }

  std::set<std::string>& used() { return used_; }

 private:
  static std::string sanitize(const std::string& label) {
    std::string s;
    for (char c : label) {
      if (is_name_char(c)) {
        s += c;
      } else if (c != '(' && c != ')') {
        s += '_';
      }
    }
    for (std::size_t p; (p = s.find("->")) != std::string::npos;) s.replace(p, 2, "_");
    if (s.empty()) s = "x";
    if (is_keyword(s) || s == "unit" || s == "row" || s == "map") s += "_";
    return s;
  }

  std::set<std::string> used_;
};

}  // namespace

std::string serialize(const std::string& name, const FiniteGroupoid& g) {
  NameMap top;
  const std::string gname = top(name);

  NameMap object_names;
  std::vector<std::string> objects;
  for (ObjectIndex x = 0; x < g.object_count(); ++x) objects.push_back(object_names(g.object_label(x)));

  // Unit labels are generated from object names; keep arrows clear of them.
  std::set<std::string> reserved;
  for (const auto& o : objects) reserved.insert("1_" + o);
  NameMap arrow_names(reserved);
  std::vector<std::string> arrows(g.morphism_count());
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (!g.is_unit(m)) arrows[m] = arrow_names(g.morphism_label(m));
  }

  std::ostringstream os;
  os << "groupoid " << gname << " {\n  objects: ";
  for (std::size_t x = 0; x < objects.size(); ++x) os << (x ? ", " : "") << objects[x];
  os << ";\n";
  bool any_arrow = false;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (g.is_unit(m)) continue;
    os << (any_arrow ? "          " : "  arrows: ") << arrows[m] << ": " << objects[g.source(m)]
       << " -> " << objects[g.target(m)] << ";\n";
    any_arrow = true;
  }
  bool any_row = false;
  for (MorphismIndex i = 0; i < g.morphism_count(); ++i) {
    if (g.is_unit(i)) continue;
    for (MorphismIndex j = 0; j < g.morphism_count(); ++j) {
      if (g.is_unit(j) || !g.composable(i, j)) continue;
      const auto k = g.compose(i, j);
      os << (any_row ? "        " : "  comp: ") << arrows[i] << " . " << arrows[j] << " = ";
      if (g.is_unit(k)) {
        os << "unit(" << objects[g.source(k)] << ")";
      } else {
        os << arrows[k];
      }
      os << ";\n";
      any_row = true;
    }
  }
  os << "}\n";
  return os.str();
}

std::string serialize(const std::string& name, const EventSpace& space) {
  NameMap top;
  NameMap frame_names;
  std::vector<std::string> frames;
  std::vector<std::vector<std::string>> events;
  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>> rename;
  for (const auto& f : space.frames()) {
    frames.push_back(frame_names(f.label));
    NameMap event_names;
    events.emplace_back();
    for (const auto& e : f.events) {
      events.back().push_back(event_names(e));
      rename[{f.label, e}] = {frames.back(), events.back().back()};
    }
  }

  std::ostringstream os;
  os << "eventspace " << top(name) << " {\n";
  for (std::size_t f = 0; f < frames.size(); ++f) {
    os << "  frame " << frames[f] << " { ";
    for (std::size_t e = 0; e < events[f].size(); ++e) os << (e ? ", " : "") << events[f][e];
    os << " }\n";
  }
  for (const auto& [lhs, rhs] : space.identifications()) {
    const auto& l = rename.at({lhs.frame, lhs.event});
    const auto& r = rename.at({rhs.frame, rhs.event});
    os << "  identify " << l.first << "." << l.second << " ~ " << r.first << "." << r.second << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string serialize(const Elaboration& elaboration) {
  std::string out;
  for (const auto& name : elaboration.order) {
    if (!out.empty()) out += "\n";
    std::visit([&](const auto& v) { out += serialize(name, v); }, elaboration.at(name));
  }
  return out;
}

}  // namespace gpdkit::speclang
