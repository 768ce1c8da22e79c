#pragma once

#include <cassert>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rascal/data/schema.hpp"
#include "rascal/rules/literal.hpp"

namespace rascal {

// Antecedent tree of a possibly non-operational rule.
struct Expr {
  enum class Kind { Literal, Symbol, And, Or, Not };

  Kind kind = Kind::Literal;
  Literal literal;              // Kind::Literal
  std::string symbol;           // Kind::Symbol, a non-atomic name
  std::vector<Expr> children;   // And/Or: two or more; Not: exactly one

  static Expr lit(Literal l) {
    Expr e;
    e.kind = Kind::Literal;
    e.literal = l;
    return e;
  }

  static Expr sym(std::string name) {
    Expr e;
    e.kind = Kind::Symbol;
    e.symbol = std::move(name);
    return e;
  }

  static Expr negation(Expr child) {
    Expr e;
    e.kind = Kind::Not;
    e.children.push_back(std::move(child));
    return e;
  }

  // n-ary conjunction; nested conjunctions are flattened and a single
  // operand is returned as is.
  static Expr all(std::vector<Expr> operands) { return join(Kind::And, std::move(operands)); }
  static Expr any(std::vector<Expr> operands) { return join(Kind::Or, std::move(operands)); }

  bool is_leaf() const noexcept { return kind == Kind::Literal || kind == Kind::Symbol; }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::Literal: return a.literal == b.literal;
      case Kind::Symbol: return a.symbol == b.symbol;
      default: return a.children == b.children;
    }
  }

 private:
  static Expr join(Kind kind, std::vector<Expr> operands) {
    assert(!operands.empty());
    if (operands.size() == 1) return std::move(operands.front());
    Expr e;
    e.kind = kind;
    for (auto& op : operands) {
      if (op.kind == kind) {
        for (auto& c : op.children) e.children.push_back(std::move(c));
      } else {
        e.children.push_back(std::move(op));
      }
    }
    return e;
  }
};

// Postcondition of a rule: either a non-atomic symbol or a class label.
struct RuleHead {
  bool is_class = false;
  std::string symbol;      // when !is_class
  ValueId class_label = 0; // when is_class

  static RuleHead for_symbol(std::string name) { return {false, std::move(name), 0}; }
  static RuleHead for_class(ValueId label) { return {true, {}, label}; }

  friend bool operator==(const RuleHead&, const RuleHead&) = default;
};

struct Rule {
  RuleHead head;
  Expr antecedent;
  std::size_t line = 0;  // source line of the head, 0 when built in code
};

// Parsed rule hierarchy bound to a schema.
struct Ruleset {
  Schema schema;
  std::vector<Rule> rules;
  // Non-atomic symbol -> indices into `rules` of its defining rules.
  std::map<std::string, std::vector<std::size_t>> definitions;
  // Every non-atomic symbol mentioned anywhere, defined or not.
  std::map<std::string, std::size_t> symbol_first_line;

  std::size_t size() const noexcept { return rules.size(); }
  bool empty() const noexcept { return rules.empty(); }

  std::size_t class_rule_count() const {
    std::size_t n = 0;
    for (const auto& r : rules) n += r.head.is_class ? 1 : 0;
    return n;
  }

  void add(Rule rule) {
    if (!rule.head.is_class) {
      definitions[rule.head.symbol].push_back(rules.size());
      symbol_first_line.emplace(rule.head.symbol, rule.line);
    }
    collect_symbols(rule.antecedent, rule.line);
    rules.push_back(std::move(rule));
  }

 private:
  void collect_symbols(const Expr& e, std::size_t line) {
    if (e.kind == Expr::Kind::Symbol) symbol_first_line.emplace(e.symbol, line);
    for (const auto& c : e.children) collect_symbols(c, line);
  }
};

}  // namespace rascal
