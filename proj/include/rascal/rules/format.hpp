#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rascal/data/schema.hpp"
#include "rascal/rules/ast.hpp"
#include "rascal/rules/literal.hpp"

namespace rascal {

// Renders an expression in rule-language syntax. Literals are always written
// with an explicit value so the output parses back against the same schema.
inline std::string to_string(const Expr& e, const Schema& schema) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      return to_string(e.literal, schema);
    case Expr::Kind::Symbol:
      return e.symbol;
    case Expr::Kind::Not: {
      const Expr& c = e.children.front();
      return c.is_leaf() ? "!" + to_string(c, schema) : "!(" + to_string(c, schema) + ")";
    }
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      const bool is_and = e.kind == Expr::Kind::And;
      std::string out;
      for (const auto& c : e.children) {
        if (!out.empty()) out += is_and ? " & " : " | ";
        bool wrap = is_and && c.kind == Expr::Kind::Or;
        out += wrap ? "(" + to_string(c, schema) + ")" : to_string(c, schema);
      }
      return out;
    }
  }
  return {};
}

inline std::string to_string(const OperationalRule& rule, const Schema& schema) {
  const Attribute& cls = schema.class_attribute();
  std::string out = cls.name + "=" + cls.domain.at(rule.class_label) + " <-";
  for (std::size_t i = 0; i < rule.literals.size(); ++i)
    out += (i ? " & " : " ") + to_string(rule.literals[i], schema);
  return out + ".";
}

// One operational rule per line, each preceded by a comment with its id.
inline void write_operational_rules(const std::vector<OperationalRule>& rules, const Schema& schema,
                                    std::ostream& out) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    out << "# " << i << ": from rule " << rules[i].origin << ", L=" << rules[i].length() << '\n';
    out << to_string(rules[i], schema) << '\n';
  }
}

}  // namespace rascal
