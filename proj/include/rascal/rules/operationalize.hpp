#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rascal/data/schema.hpp"
#include "rascal/error.hpp"
#include "rascal/rules/ast.hpp"
#include "rascal/rules/literal.hpp"
#include "rascal/rules/normalize.hpp"

namespace rascal {

inline constexpr std::size_t kDefaultMaxRules = 10000;

// A sorted, deduplicated conjunction of literals.
using Term = std::vector<Literal>;

// Sorts and deduplicates a conjunction and simplifies it per feature.
// Returns nullopt when the conjunction cannot be satisfied:
//   - two positive literals with different values on one feature,
//   - f=v together with f!=v,
//   - negations that exclude every value of a feature's domain.
// A negation implied by a positive literal on the same feature (f=A, f!=C)
// is dropped.
inline std::optional<Term> canonicalize_term(Term term, const Schema& schema) {
  std::sort(term.begin(), term.end());
  term.erase(std::unique(term.begin(), term.end()), term.end());
  Term out;
  out.reserve(term.size());
  for (auto first = term.begin(); first != term.end();) {
    auto last = std::find_if(first, term.end(), [&](const Literal& l) { return l.feature != first->feature; });
    // Literals sort by (feature, negated, value): positives precede negations.
    std::optional<ValueId> positive;
    std::size_t negations = 0;
    for (auto it = first; it != last; ++it) {
      if (!it->negated) {
        if (positive && *positive != it->value) return std::nullopt;
        positive = it->value;
      } else {
        if (positive && *positive == it->value) return std::nullopt;
        ++negations;
      }
    }
    if (positive) {
      out.push_back({first->feature, *positive, false});
    } else {
      if (negations >= schema.feature(first->feature).arity()) return std::nullopt;
      out.insert(out.end(), first, last);
    }
    first = last;
  }
  return out;
}

namespace detail {

// Ordered set of terms: keeps first-insertion order for determinism.
class TermSet {
 public:
  bool insert(Term t) {
    if (!seen_.insert(t).second) return false;
    terms_.push_back(std::move(t));
    return true;
  }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::vector<Term> take() && { return std::move(terms_); }

 private:
  std::set<Term> seen_;
  std::vector<Term> terms_;
};

class DnfExpander {
 public:
  DnfExpander(const Schema& schema, std::size_t max_terms) : schema_(schema), max_terms_(max_terms) {}

  std::vector<Term> expand(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Literal:
        return {Term{e.literal}};
      case Expr::Kind::Or: {
        TermSet acc;
        for (const auto& c : e.children) {
          for (auto& t : expand(c)) {
            acc.insert(std::move(t));
            check(acc.size());
          }
        }
        return std::move(acc).take();
      }
      case Expr::Kind::And: {
        std::vector<Term> acc{Term{}};
        for (const auto& c : e.children) {
          std::vector<Term> rhs = expand(c);
          TermSet next;
          for (const auto& left : acc) {
            for (const auto& right : rhs) {
              Term merged = left;
              merged.insert(merged.end(), right.begin(), right.end());
              auto canon = canonicalize_term(std::move(merged), schema_);
              if (!canon) {
                ++dropped_;
                continue;
              }
              next.insert(std::move(*canon));
              check(next.size());
            }
          }
          acc = std::move(next).take();
          if (acc.empty()) break;
        }
        return acc;
      }
      case Expr::Kind::Symbol:
      case Expr::Kind::Not:
        throw RuleError("internal: DNF expansion reached a non-atomic node; unfold first");
    }
    return {};
  }

  std::size_t dropped() const noexcept { return dropped_; }

 private:
  void check(std::size_t n) const {
    if (n > max_terms_)
      throw BlowupError("DNF expansion exceeds max_rules = " + std::to_string(max_terms_) +
                        "; simplify the ruleset or raise the limit");
  }

  const Schema& schema_;
  std::size_t max_terms_;
  std::size_t dropped_ = 0;
};

}  // namespace detail

struct OperationalizeResult {
  std::vector<OperationalRule> rules;
  std::size_t class_rules = 0;            // unfolded class rules expanded
  std::size_t dropped_unsatisfiable = 0;  // conjunctions discarded as contradictory
  std::size_t merged_duplicates = 0;      // identical rules collapsed into one
};

// Turns every class rule into operational rules: unfold, expand to DNF, one
// rule per disjunct. Output order follows class-rule order then expansion
// order; duplicates keep their first occurrence.
inline OperationalizeResult operationalize(const Ruleset& ruleset, std::size_t max_rules = kDefaultMaxRules) {
  if (max_rules == 0) throw RangeError("max_rules must be positive");
  OperationalizeResult out;
  std::vector<ClassRule> unfolded = unfold(ruleset);
  out.class_rules = unfolded.size();

  std::set<std::pair<ValueId, Term>> seen;
  for (const ClassRule& cr : unfolded) {
    detail::DnfExpander expander(ruleset.schema, max_rules);
    std::vector<Term> terms = expander.expand(to_nnf(cr.antecedent));
    out.dropped_unsatisfiable += expander.dropped();
    for (auto& t : terms) {
      if (!seen.emplace(cr.class_label, t).second) {
        ++out.merged_duplicates;
        continue;
      }
      out.rules.push_back({std::move(t), cr.class_label, cr.origin});
      if (out.rules.size() > max_rules)
        throw BlowupError("operational ruleset exceeds max_rules = " + std::to_string(max_rules));
    }
  }
  return out;
}

// Definition 1 predicate: atomic literals over schema features only, a class
// label as consequent, at most one positive literal per feature.
inline bool is_operational(const OperationalRule& rule, const Schema& schema) {
  if (rule.class_label >= schema.class_attribute().arity()) return false;
  std::map<FeatureId, std::size_t> positives;
  for (const Literal& l : rule.literals) {
    if (l.feature >= schema.num_features() || l.value >= schema.feature(l.feature).arity()) return false;
    if (!l.negated && ++positives[l.feature] > 1) return false;
  }
  return std::is_sorted(rule.literals.begin(), rule.literals.end()) &&
         std::adjacent_find(rule.literals.begin(), rule.literals.end()) == rule.literals.end();
}

}  // namespace rascal
