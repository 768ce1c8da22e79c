#pragma once

// Test-only reference implementations. Nothing here calls the code paths it
// is used to check: hierarchy truth is evaluated by direct recursion over the
// parsed rules (no unfolding, no De Morgan, no DNF), and rule statistics are
// counted from raw feature values.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rascal/rascal.hpp"

namespace rascal::testing {

// Truth of an antecedent under a complete assignment, resolving symbols
// through their defining rules.
inline bool holds(const Ruleset& rs, const Expr& e, const std::vector<ValueId>& assignment) {
  switch (e.kind) {
    case Expr::Kind::Literal: {
      bool eq = assignment[e.literal.feature] == e.literal.value;
      return e.literal.negated ? !eq : eq;
    }
    case Expr::Kind::Symbol: {
      for (std::size_t id : rs.definitions.at(e.symbol))
        if (holds(rs, rs.rules[id].antecedent, assignment)) return true;
      return false;
    }
    case Expr::Kind::Not:
      return !holds(rs, e.children.front(), assignment);
    case Expr::Kind::And:
      for (const auto& c : e.children)
        if (!holds(rs, c, assignment)) return false;
      return true;
    case Expr::Kind::Or:
      for (const auto& c : e.children)
        if (holds(rs, c, assignment)) return true;
      return false;
  }
  return false;
}

// Does the hierarchy conclude `label` for this assignment?
inline bool concludes(const Ruleset& rs, ValueId label, const std::vector<ValueId>& assignment) {
  for (const auto& r : rs.rules)
    if (r.head.is_class && r.head.class_label == label && holds(rs, r.antecedent, assignment)) return true;
  return false;
}

inline bool covered(const std::vector<OperationalRule>& rules, ValueId label, const std::vector<ValueId>& assignment) {
  for (const auto& r : rules) {
    if (r.class_label != label) continue;
    bool all = true;
    for (const auto& l : r.literals) {
      bool eq = assignment[l.feature] == l.value;
      if (eq == l.negated) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// Calls f for every complete assignment of the schema's features.
inline void for_each_assignment(const Schema& schema, const std::function<void(const std::vector<ValueId>&)>& f) {
  std::vector<ValueId> a(schema.num_features(), 0);
  while (true) {
    f(a);
    std::size_t i = 0;
    while (i < a.size()) {
      if (++a[i] < schema.feature(i).arity()) break;
      a[i] = 0;
      ++i;
    }
    if (i == a.size()) return;
  }
}

// Exhaustive dataset: every assignment once, labelled by `label_of`.
inline Dataset exhaustive_dataset(const Schema& schema, const std::function<ValueId(const std::vector<ValueId>&)>& label_of) {
  Dataset d(schema);
  for_each_assignment(schema, [&](const std::vector<ValueId>& a) { d.add(Instance{a, label_of(a), {}}); });
  return d;
}

struct BruteCounts {
  std::size_t m = 0, s = 0;
};

inline BruteCounts brute_counts(const Dataset& d, const OperationalRule& r) {
  BruteCounts out;
  for (const auto& inst : d.instances()) {
    bool match = true;
    for (const auto& l : r.literals) match = match && ((inst.values[l.feature] == l.value) != l.negated);
    if (match) {
      ++out.m;
      if (inst.class_label == r.class_label) ++out.s;
    }
  }
  return out;
}

// Random acyclic hierarchy over boolean features x1..xK as rule text.
// Symbol sI may only reference features and symbols sJ with J > I.
class RulesetGenerator {
 public:
  RulesetGenerator(std::size_t features, std::size_t symbols, std::uint64_t seed)
      : features_(features), symbols_(symbols), rng_(seed) {}

  std::string text() {
    std::string out;
    for (std::size_t s = 0; s < symbols_; ++s) {
      std::size_t defs = pick(2) + 1;
      for (std::size_t d = 0; d < defs; ++d) out += "s" + std::to_string(s) + " <- " + expr(2, s + 1) + ".\n";
    }
    std::size_t class_rules = pick(2) + 1;
    for (std::size_t c = 0; c < class_rules; ++c) out += "class <- " + expr(2, 0) + ".\n";
    return out;
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::string leaf(std::size_t min_symbol) {
    const std::size_t avail_symbols = symbols_ > min_symbol ? symbols_ - min_symbol : 0;
    std::size_t choice = pick(features_ + avail_symbols);
    std::string base;
    if (choice < features_) {
      base = "x" + std::to_string(choice + 1);
      switch (pick(3)) {
        case 0: break;
        case 1: base += "=T"; break;
        default: base += "=F";
      }
    } else {
      base = "s" + std::to_string(min_symbol + choice - features_);
    }
    return pick(3) == 0 ? "!" + base : base;
  }

  std::string expr(int depth, std::size_t min_symbol) {
    if (depth == 0 || pick(3) == 0) return leaf(min_symbol);
    std::size_t n = pick(2) + 2;
    const char* op = pick(2) ? " & " : " | ";
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) out += op;
      out += "(" + expr(depth - 1, min_symbol) + ")";
    }
    return pick(4) == 0 ? "!(" + out + ")" : out;
  }

  std::size_t features_;
  std::size_t symbols_;
  std::mt19937_64 rng_;
};

}  // namespace rascal::testing
