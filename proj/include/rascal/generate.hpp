#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/error.hpp"
#include "rascal/parallel.hpp"
#include "rascal/random.hpp"
#include "rascal/rules/literal.hpp"
#include "rascal/scoring.hpp"

namespace rascal {

// Virtual-sample budget assigned to one rule.
struct Allocation {
  std::size_t rule_id = 0;
  double raw = 0;         // U(r) / sum U * I * N
  std::size_t count = 0;  // P(r) after apportionment
};

// round(I * N), the total number of virtual samples for a budget ratio I.
inline std::size_t virtual_budget(double ratio, std::size_t n) {
  if (!(ratio >= 0.0) || !std::isfinite(ratio)) throw RangeError("I must be a finite ratio >= 0");
  return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
}

// Splits round(I * N) samples across rules in proportion to U(r) using
// largest-remainder apportionment. Remainder ties go to the lower rule index.
inline std::vector<Allocation> allocate(const std::vector<RuleScore>& scores, double ratio, std::size_t n) {
  if (n == 0) throw RangeError("allocate: N must be at least 1");
  const std::size_t total = virtual_budget(ratio, n);
  std::vector<Allocation> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i].rule_id = scores[i].rule_id;
  if (ratio == 0.0) return out;

  double sum_u = 0;
  for (const auto& s : scores) {
    if (!(s.utility >= 0.0)) throw RangeError("allocate: negative or NaN utility");
    sum_u += s.utility;
  }
  if (!(sum_u > 0.0)) throw RangeError("allocate: no rule has positive utility, cannot generate virtual samples");

  const double budget = ratio * static_cast<double>(n);
  std::vector<double> remainder(scores.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i].raw = scores[i].utility / sum_u * budget;
    double whole = std::floor(out[i].raw);
    out[i].count = static_cast<std::size_t>(whole);
    remainder[i] = out[i].raw - whole;
    assigned += out[i].count;
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  if (assigned < total) {
    std::size_t deficit = total - assigned;
    for (std::size_t j = 0; deficit > 0; j = (j + 1) % order.size(), --deficit) ++out[order[j]].count;
  } else {
    // Floating-point drift can push the floors one above the target.
    std::size_t excess = assigned - total;
    for (auto it = order.rbegin(); excess > 0 && it != order.rend(); ++it) {
      if (out[*it].count == 0) continue;
      --out[*it].count;
      --excess;
    }
  }
  return out;
}

// Generation template of one operational rule: positive literals fix a
// feature, negated literals exclude values, the rest is free.
struct GenerationTemplate {
  std::size_t rule_id = 0;
  ValueId class_label = 0;
  std::map<FeatureId, ValueId> fixed;
  std::map<FeatureId, std::set<ValueId>> forbidden;
  std::vector<FeatureId> free;
  // Candidate values per feature in schema order; a single entry when fixed.
  std::vector<std::vector<ValueId>> choices;
};

inline GenerationTemplate build_template(const OperationalRule& rule, const Schema& schema,
                                         std::size_t rule_id = 0) {
  check_rule_schema(rule, schema);
  GenerationTemplate t;
  t.rule_id = rule_id;
  t.class_label = rule.class_label;
  for (const Literal& l : rule.literals) {
    if (l.negated) continue;
    auto [it, inserted] = t.fixed.emplace(l.feature, l.value);
    if (!inserted && it->second != l.value)
      throw RuleError("unsatisfiable rule: feature '" + schema.feature(l.feature).name + "' fixed to two values");
  }
  for (const Literal& l : rule.literals) {
    if (!l.negated) continue;
    if (auto it = t.fixed.find(l.feature); it != t.fixed.end()) {
      if (it->second == l.value)
        throw RuleError("unsatisfiable rule: feature '" + schema.feature(l.feature).name +
                        "' both required and excluded");
      continue;
    }
    t.forbidden[l.feature].insert(l.value);
  }
  t.choices.resize(schema.num_features());
  for (FeatureId f = 0; f < schema.num_features(); ++f) {
    if (auto it = t.fixed.find(f); it != t.fixed.end()) {
      t.choices[f] = {it->second};
      continue;
    }
    const auto excluded = t.forbidden.find(f);
    for (ValueId v = 0; v < schema.feature(f).arity(); ++v)
      if (excluded == t.forbidden.end() || !excluded->second.count(v)) t.choices[f].push_back(v);
    if (t.choices[f].empty())
      throw RuleError("unsatisfiable rule: every value of feature '" + schema.feature(f).name + "' is excluded");
    if (excluded == t.forbidden.end()) t.free.push_back(f);
  }
  return t;
}

// `count` instances matching the template. Non-fixed features are drawn
// uniformly from their candidate values.
inline std::vector<Instance> generate_from_rule(const GenerationTemplate& t, std::size_t count, Rng& rng) {
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Instance inst;
    inst.values.resize(t.choices.size());
    for (std::size_t f = 0; f < t.choices.size(); ++f) {
      const auto& c = t.choices[f];
      if (c.size() == 1) {
        inst.values[f] = c.front();
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
        inst.values[f] = c[pick(rng)];
      }
    }
    inst.class_label = t.class_label;
    inst.provenance = Provenance::from_rule(t.rule_id);
    out.push_back(std::move(inst));
  }
  return out;
}

struct GenerationResult {
  std::vector<Allocation> allocations;
  std::vector<Instance> instances;
  std::size_t duplicates_of_originals = 0;  // virtual rows equal to some original row
  std::size_t duplicates_among_virtual = 0; // virtual rows equal to an earlier virtual row
};

// Allocates the budget and generates every rule's share. Rule r draws from
// its own substream of `seed`, so the result does not depend on `threads`.
inline GenerationResult generate_all(const Dataset& dataset, const std::vector<OperationalRule>& rules,
                                     const std::vector<RuleScore>& scores, double ratio, std::uint64_t seed,
                                     unsigned threads = 1) {
  if (rules.size() != scores.size()) throw RangeError("generate_all: rules and scores are not aligned");
  GenerationResult out;
  out.allocations = allocate(scores, ratio, dataset.size());

  std::vector<std::vector<Instance>> per_rule(rules.size());
  parallel_for(rules.size(), threads, [&](std::size_t r) {
    if (out.allocations[r].count == 0) return;
    GenerationTemplate t = build_template(rules[r], dataset.schema(), r);
    Rng rng = substream(seed, {r});
    per_rule[r] = generate_from_rule(t, out.allocations[r].count, rng);
  });
  for (auto& batch : per_rule)
    for (auto& inst : batch) out.instances.push_back(std::move(inst));

  using Key = std::pair<std::vector<ValueId>, ValueId>;
  std::set<Key> originals;
  for (const auto& inst : dataset.instances()) originals.emplace(inst.values, inst.class_label);
  std::set<Key> seen;
  for (const auto& inst : out.instances) {
    Key k{inst.values, inst.class_label};
    if (originals.count(k)) ++out.duplicates_of_originals;
    if (!seen.insert(std::move(k)).second) ++out.duplicates_among_virtual;
  }
  return out;
}

// TSV: rule_id, raw, count
inline void write_allocations_tsv(const std::vector<Allocation>& allocations, std::ostream& out) {
  out << "rule_id\traw\tcount\n";
  for (const auto& a : allocations) out << a.rule_id << '\t' << format_fixed(a.raw) << '\t' << a.count << '\n';
}

}  // namespace rascal
