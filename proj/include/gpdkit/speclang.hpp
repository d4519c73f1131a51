#pragma once

// The .gpd description language.
//
//   file        := decl* ;
//   decl        := explicit | pair | group | action | union | restrict | espace ;
//   explicit    := "groupoid" NAME "{" "objects" ":" namelist ";"
//                  ["arrows" ":" arrow (";" arrow)* ";"]
//                  ["comp" ":" comprow (";" comprow)* ";"] "}" ;
//   arrow       := NAME ":" NAME "->" NAME ;
//   comprow     := NAME "." NAME "=" rhs ;     rhs := NAME | "unit" "(" NAME ")" ;
//   pair        := "pair" NAME "{" namelist "}" ;
//   group       := "group" NAME "{" NAME ";" ("row" ":" namelist ";")+ "}" ;
//   action      := "action" NAME "{" NAME ";" namelist ";" ("map" NAME NAME "->" NAME ";")+ "}" ;
//   union       := "union" NAME "{" namelist "}" ;
//   restrict    := "restrict" NAME "{" NAME ";" namelist "}" ;
//   espace      := "eventspace" NAME "{" ("frame" NAME "{" namelist "}")+
//                  ("identify" NAME "." NAME "~" NAME "." NAME ";")* "}" ;
//   namelist    := NAME ("," NAME)* ;
//
// NAME is [A-Za-z0-9_+-]+ (never containing "->"); '#' starts a line comment.
// "g . f" means g o f, first f. An explicit groupoid declares generating
// arrows only: every object gets a unit "1_<object>", and every arrow f that
// is not paired with a declared inverse by a row "f . g = unit(target f)"
// gets a formal inverse "<f>Inv". All remaining composable pairs must be
// listed in comp rows.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gpdkit/error.hpp"
#include "gpdkit/groupoid.hpp"
#include "gpdkit/schwinger.hpp"

namespace gpdkit::speclang {

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;  // bytes from the start of the input

  friend bool operator==(const Location&, const Location&) = default;
};

struct Span {
  Location begin;
  Location end;  // one past the last character
};

std::string to_string(const Location& loc);

enum class TokenKind { identifier, keyword, punct };

struct Token {
  TokenKind kind;
  std::string text;
  Span span;
};

class UnexpectedCharacter : public Error {
 public:
  UnexpectedCharacter(Location loc, char c);
  const Location& location() const noexcept { return loc_; }

 private:
  Location loc_;
};

enum class SyntaxReason { unexpected_token, unknown_name, duplicate_name };

class SyntaxError : public Error {
 public:
  SyntaxError(SyntaxReason reason, Location loc, std::vector<std::string> expected,
              std::string found);

  SyntaxReason reason() const noexcept { return reason_; }
  const Location& location() const noexcept { return loc_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  SyntaxReason reason_;
  Location loc_;
  std::vector<std::string> expected_;
  std::string found_;
};

enum class ElaborationKind { not_closed, axiom_violation, unknown_name };

class ElaborationError : public Error {
 public:
  ElaborationError(ElaborationKind kind, Span span, const std::string& message);

  ElaborationKind kind() const noexcept { return kind_; }
  const Span& span() const noexcept { return span_; }

 private:
  ElaborationKind kind_;
  Span span_;
};

bool is_keyword(std::string_view word);
// True when `word` lexes as exactly one identifier token.
bool is_valid_name(std::string_view word);

// Throws UnexpectedCharacter.
std::vector<Token> tokenize(std::string_view text);

struct Name {
  std::string text;
  Span span;
};

struct ArrowDecl {
  Name name;
  Name source;
  Name target;
};

struct CompRow {
  Name left;
  Name right;
  Name result;
  bool result_is_unit = false;  // result names an object: unit(result)
  Span span;
};

struct ExplicitGroupoid {
  Name name;
  std::vector<Name> objects;
  std::vector<ArrowDecl> arrows;
  std::vector<CompRow> rows;
};

struct PairGroupoid {
  Name name;
  std::vector<Name> labels;
};

struct GroupDecl {
  Name name;
  Name identity;
  std::vector<std::vector<Name>> rows;
};

struct ActionMap {
  Name element;
  Name point;
  Name image;
};

struct ActionGroupoid {
  Name name;
  Name group;
  std::vector<Name> points;
  std::vector<ActionMap> maps;
};

struct DisjointUnion {
  Name name;
  std::vector<Name> parts;
};

struct Restrict {
  Name name;
  Name base;
  std::vector<Name> objects;
};

struct FrameDecl {
  Name label;
  std::vector<Name> events;
};

struct IdentifyDecl {
  Name frame1;
  Name event1;
  Name frame2;
  Name event2;
};

struct EventSpaceDecl {
  Name name;
  std::vector<FrameDecl> frames;
  std::vector<IdentifyDecl> identifications;
};

using DeclBody = std::variant<ExplicitGroupoid, PairGroupoid, GroupDecl, ActionGroupoid,
                              DisjointUnion, Restrict, EventSpaceDecl>;

struct Declaration {
  DeclBody body;
  Span span;

  const Name& name() const;
};

struct SpecAst {
  std::vector<Declaration> declarations;
};

// Throws SyntaxError. References must name an earlier declaration of the
// right kind.
SpecAst parse(const std::vector<Token>& tokens);
SpecAst parse(std::string_view text);

using Value = std::variant<FiniteGroupoid, EventSpace>;

struct Elaboration {
  std::vector<std::string> order;  // declaration order
  std::map<std::string, Value> values;

  const Value& at(const std::string& name) const { return values.at(name); }
  bool contains(const std::string& name) const { return values.count(name) != 0; }
  const FiniteGroupoid* groupoid(const std::string& name) const;
  const EventSpace* event_space(const std::string& name) const;
};

// Throws ElaborationError.
Elaboration elaborate(const SpecAst& ast);

// Canonical text. Labels that are not valid names are rewritten, so the text
// elaborates to an isomorphic copy.
std::string serialize(const std::string& name, const FiniteGroupoid& g);
std::string serialize(const std::string& name, const EventSpace& space);
std::string serialize(const Elaboration& elaboration);

}  // namespace gpdkit::speclang
