#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rascal/data/schema.hpp"
#include "rascal/error.hpp"
#include "rascal/rules/ast.hpp"

namespace rascal {

namespace detail {

// Recursive-descent parser for the rule language:
//
//   rule  := head "<-" expr "."
//   head  := IDENT [ "=" VALUE ]
//   expr  := conj ( "|" conj )*
//   conj  := term ( "&" term )*
//   term  := [ "!" ] ( IDENT [ "=" VALUE ] | "(" expr ")" )
//
// '#' starts a comment that runs to end of line. VALUE is either a
// double-quoted string or a run of characters other than whitespace and
// the punctuation & | ! ( ) # . = < , ; "
class RuleParser {
 public:
  RuleParser(std::string_view text, const Schema& schema) : text_(text), schema_(schema) {}

  Ruleset parse() {
    Ruleset out;
    out.schema = schema_;
    while (true) {
      skip_blank();
      if (at_end()) break;
      out.add(parse_rule());
    }
    return out;
  }

 private:
  struct Pos {
    std::size_t line;
    std::size_t column;
  };

  struct Name {
    std::string ident;
    std::optional<std::string> value;
    Pos ident_pos;
    Pos value_pos;
  };

  Rule parse_rule() {
    Name name = parse_name();
    Rule rule;
    rule.line = name.ident_pos.line;
    rule.head = bind_head(name);
    skip_blank();
    Pos arrow = here();
    if (!consume("<-")) fail("expected '<-' after rule head", arrow);
    rule.antecedent = parse_disj();
    skip_blank();
    Pos dot = here();
    if (!consume(".")) fail("expected '.' at end of rule", dot);
    return rule;
  }

  Expr parse_disj() {
    std::vector<Expr> ops;
    ops.push_back(parse_conj());
    while (true) {
      skip_blank();
      if (!consume("|")) break;
      ops.push_back(parse_conj());
    }
    return ops.size() == 1 ? std::move(ops.front()) : make_node(Expr::Kind::Or, std::move(ops));
  }

  Expr parse_conj() {
    std::vector<Expr> ops;
    ops.push_back(parse_term());
    while (true) {
      skip_blank();
      if (!consume("&")) break;
      ops.push_back(parse_term());
    }
    return ops.size() == 1 ? std::move(ops.front()) : make_node(Expr::Kind::And, std::move(ops));
  }

  Expr parse_term() {
    skip_blank();
    bool negated = consume("!");
    skip_blank();
    Expr inner;
    Pos open = here();
    if (consume("(")) {
      inner = parse_disj();
      skip_blank();
      Pos close = here();
      if (!consume(")")) fail("expected ')' to close '(' opened at " + std::to_string(open.line) + ":" +
                              std::to_string(open.column), close);
    } else {
      inner = bind_literal(parse_name());
    }
    return negated ? Expr::negation(std::move(inner)) : inner;
  }

  Name parse_name() {
    skip_blank();
    Name n;
    n.ident_pos = here();
    if (at_end() || !ident_start(peek())) {
      fail(at_end() ? "unexpected end of input, expected identifier"
                    : "expected identifier, found '" + std::string(1, peek()) + "'",
           n.ident_pos);
    }
    while (!at_end() && ident_char(peek())) n.ident.push_back(advance());
    skip_blank();
    if (consume("=")) {
      skip_blank();
      n.value_pos = here();
      n.value = parse_value();
    }
    return n;
  }

  std::string parse_value() {
    Pos start = here();
    std::string v;
    if (consume("\"")) {
      while (!at_end() && peek() != '"' && peek() != '\n') v.push_back(advance());
      if (!consume("\"")) fail("unterminated quoted value", start);
    } else {
      while (!at_end() && value_char(peek())) v.push_back(advance());
    }
    if (v.empty()) fail("expected value after '='", start);
    return v;
  }

  RuleHead bind_head(const Name& n) {
    const Attribute& cls = schema_.class_attribute();
    if (n.ident == cls.name) {
      if (n.value) {
        auto label = cls.find(*n.value);
        if (!label) fail_bind("unknown class label '" + *n.value + "'", n.value_pos);
        return RuleHead::for_class(*label);
      }
      if (!cls.is_boolean())
        fail_bind("class rule head needs an explicit label for class '" + cls.name + "'", n.ident_pos);
      return RuleHead::for_class(*cls.find("T"));
    }
    if (schema_.find_feature(n.ident))
      fail_bind("rule concludes input feature '" + n.ident + "'; consequents must be symbols or the class",
                n.ident_pos);
    if (n.value) fail_bind("non-atomic symbol '" + n.ident + "' cannot take a value", n.value_pos);
    return RuleHead::for_symbol(n.ident);
  }

  Expr bind_literal(const Name& n) {
    if (n.ident == schema_.class_attribute().name)
      fail_bind("class attribute '" + n.ident + "' used in an antecedent", n.ident_pos);
    auto f = schema_.find_feature(n.ident);
    if (!f) {
      if (n.value) fail_bind("unknown feature '" + n.ident + "'", n.ident_pos);
      return Expr::sym(n.ident);
    }
    const Attribute& a = schema_.feature(*f);
    if (n.value) {
      auto v = a.find(*n.value);
      if (!v) fail_bind("unknown value '" + *n.value + "' for feature '" + a.name + "'", n.value_pos);
      return Expr::lit({*f, *v, false});
    }
    if (!a.is_boolean())
      fail_bind("feature '" + a.name + "' is not boolean; write " + a.name + "=VALUE", n.ident_pos);
    return Expr::lit({*f, *a.find("T"), false});
  }

  static Expr make_node(Expr::Kind kind, std::vector<Expr> ops) {
    Expr e;
    e.kind = kind;
    e.children = std::move(ops);
    return e;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  static bool value_char(char c) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    return std::string_view("&|!()#.=<,;\"").find(c) == std::string_view::npos;
  }

  void skip_blank() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool consume(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) != tok) return false;
    for (std::size_t i = 0; i < tok.size(); ++i) advance();
    return true;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  Pos here() const { return {line_, column_}; }

  [[noreturn]] void fail(const std::string& what, Pos p) { throw SyntaxError(what, p.line, p.column); }
  [[noreturn]] void fail_bind(const std::string& what, Pos p) {
    throw RuleError(std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + what);
  }

  std::string_view text_;
  const Schema& schema_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace detail

// Parses rule text against a schema. Identifiers naming schema features
// become atomic literals; any other identifier is a non-atomic symbol.
inline Ruleset parse_ruleset(std::string_view text, const Schema& schema) {
  return detail::RuleParser(text, schema).parse();
}

}  // namespace rascal
