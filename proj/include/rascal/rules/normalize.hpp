#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rascal/error.hpp"
#include "rascal/rules/ast.hpp"

namespace rascal {

// Negation of `expr` in negation-normal form: De Morgan pushes the negation
// to the leaves, where a literal flips its negated flag. A non-atomic symbol
// that has not been unfolded yet is wrapped in a Not node.
inline Expr negate(const Expr& expr);

// Pushes every Not node down to the leaves.
inline Expr to_nnf(const Expr& expr) {
  switch (expr.kind) {
    case Expr::Kind::Literal:
    case Expr::Kind::Symbol:
      return expr;
    case Expr::Kind::Not:
      return negate(expr.children.front());
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      std::vector<Expr> ops;
      ops.reserve(expr.children.size());
      for (const auto& c : expr.children) ops.push_back(to_nnf(c));
      return expr.kind == Expr::Kind::And ? Expr::all(std::move(ops)) : Expr::any(std::move(ops));
    }
  }
  return expr;
}

inline Expr negate(const Expr& expr) {
  switch (expr.kind) {
    case Expr::Kind::Literal:
      return Expr::lit(expr.literal.negation());
    case Expr::Kind::Symbol:
      return Expr::negation(expr);
    case Expr::Kind::Not:
      return to_nnf(expr.children.front());
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      std::vector<Expr> ops;
      ops.reserve(expr.children.size());
      for (const auto& c : expr.children) ops.push_back(negate(c));
      return expr.kind == Expr::Kind::And ? Expr::any(std::move(ops)) : Expr::all(std::move(ops));
    }
  }
  return expr;
}

struct Diagnostic {
  enum class Kind { Cycle, Undefined };
  Kind kind;
  std::vector<std::string> symbols;  // sorted
  std::string message;
};

// Structural checks that must pass before unfolding: the symbol dependency
// graph is acyclic and every referenced symbol has a defining rule. Returns
// one diagnostic per undefined symbol and one per cycle (strongly connected
// component), in symbol order.
inline std::vector<Diagnostic> validate(const Ruleset& ruleset) {
  std::vector<Diagnostic> out;

  std::map<std::string, std::set<std::string>> deps;
  std::function<void(const Expr&, std::set<std::string>&)> collect = [&](const Expr& e, std::set<std::string>& acc) {
    if (e.kind == Expr::Kind::Symbol) acc.insert(e.symbol);
    for (const auto& c : e.children) collect(c, acc);
  };
  for (const auto& [symbol, rule_ids] : ruleset.definitions) {
    auto& acc = deps[symbol];
    for (std::size_t id : rule_ids) collect(ruleset.rules[id].antecedent, acc);
  }

  for (const auto& [symbol, line] : ruleset.symbol_first_line) {
    if (!ruleset.definitions.count(symbol)) {
      out.push_back({Diagnostic::Kind::Undefined, {symbol},
                     "line " + std::to_string(line) + ": symbol '" + symbol + "' is never defined"});
    }
  }

  // Tarjan's strongly connected components over defined symbols.
  std::map<std::string, std::size_t> index, low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::size_t counter = 0;
  std::vector<std::vector<std::string>> cycles;
  std::function<void(const std::string&)> strongconnect = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : deps[v]) {
      if (!ruleset.definitions.count(w)) continue;
      if (!index.count(w)) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> component;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        component.push_back(w);
      } while (w != v);
      bool self_loop = component.size() == 1 && deps[v].count(v);
      if (component.size() > 1 || self_loop) {
        std::sort(component.begin(), component.end());
        cycles.push_back(std::move(component));
      }
    }
  };
  for (const auto& [symbol, _] : ruleset.definitions)
    if (!index.count(symbol)) strongconnect(symbol);

  std::sort(cycles.begin(), cycles.end());
  for (auto& c : cycles) {
    std::string names;
    for (const auto& s : c) names += (names.empty() ? "" : ", ") + s;
    out.push_back({Diagnostic::Kind::Cycle, c, "cyclic definition among {" + names + "}"});
  }
  return out;
}

inline void require_valid(const Ruleset& ruleset) {
  auto diags = validate(ruleset);
  if (diags.empty()) return;
  std::string msg = "invalid ruleset:";
  for (const auto& d : diags) msg += "\n  " + d.message;
  throw RuleError(msg);
}

// A rule concluding a class label whose antecedent mentions atomic literals only.
struct ClassRule {
  Expr antecedent;     // negation-normal form
  ValueId class_label = 0;
  std::size_t origin = 0;  // index of the class rule in Ruleset::rules
};

// Backward chaining: every non-atomic symbol in a class rule is replaced by
// the disjunction of its defining antecedents, recursively, and negated
// symbols by the De Morgan negation of that disjunction. Throws RuleError if
// the ruleset does not validate.
inline std::vector<ClassRule> unfold(const Ruleset& ruleset) {
  require_valid(ruleset);
  std::map<std::string, Expr> memo;

  std::function<Expr(const Expr&)> expand = [&](const Expr& e) -> Expr {
    switch (e.kind) {
      case Expr::Kind::Literal:
        return e;
      case Expr::Kind::Symbol: {
        if (auto it = memo.find(e.symbol); it != memo.end()) return it->second;
        std::vector<Expr> alternatives;
        for (std::size_t id : ruleset.definitions.at(e.symbol))
          alternatives.push_back(expand(ruleset.rules[id].antecedent));
        Expr def = Expr::any(std::move(alternatives));
        memo.emplace(e.symbol, def);
        return def;
      }
      case Expr::Kind::Not:
        return negate(expand(e.children.front()));
      case Expr::Kind::And:
      case Expr::Kind::Or: {
        std::vector<Expr> ops;
        ops.reserve(e.children.size());
        for (const auto& c : e.children) ops.push_back(expand(c));
        return e.kind == Expr::Kind::And ? Expr::all(std::move(ops)) : Expr::any(std::move(ops));
      }
    }
    return e;
  };

  std::vector<ClassRule> out;
  for (std::size_t i = 0; i < ruleset.rules.size(); ++i) {
    const Rule& r = ruleset.rules[i];
    if (!r.head.is_class) continue;
    out.push_back({expand(r.antecedent), r.head.class_label, i});
  }
  return out;
}

}  // namespace rascal
