#pragma once

#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "rascal/data/schema.hpp"

namespace rascal {

// feature = value, or feature != value when negated.
struct Literal {
  FeatureId feature = 0;
  ValueId value = 0;
  bool negated = false;

  Literal negation() const { return {feature, value, !negated}; }

  bool satisfied_by(ValueId actual) const { return (actual == value) != negated; }

  friend auto operator<=>(const Literal& a, const Literal& b) {
    return std::tie(a.feature, a.negated, a.value) <=> std::tie(b.feature, b.negated, b.value);
  }
  friend bool operator==(const Literal&, const Literal&) = default;
};

// A conjunction of atomic literals concluding a class label. Literals are
// kept sorted and deduplicated; see canonicalize_term().
struct OperationalRule {
  std::vector<Literal> literals;
  ValueId class_label = 0;
  // Index of the class rule in the source ruleset this rule was expanded from.
  std::size_t origin = 0;

  // L(r)
  std::size_t length() const noexcept { return literals.size(); }

  bool same_rule(const OperationalRule& other) const {
    return class_label == other.class_label && literals == other.literals;
  }
};

inline std::string to_string(const Literal& lit, const Schema& schema) {
  const Attribute& a = schema.feature(lit.feature);
  return (lit.negated ? "!" : "") + a.name + "=" + a.domain.at(lit.value);
}

}  // namespace rascal
