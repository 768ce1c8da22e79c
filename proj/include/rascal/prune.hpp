#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/error.hpp"
#include "rascal/parallel.hpp"
#include "rascal/rules/literal.hpp"
#include "rascal/scoring.hpp"

namespace rascal {

inline constexpr double kDefaultKeepBias = 0.6;

// Probabilistic sum a + b - ab; stays in [0, 1] for inputs in [0, 1].
inline double utility_union(double a, double b) {
  detail::require_unit(a, "utility_union operand");
  detail::require_unit(b, "utility_union operand");
  return a + b - a * b;
}

struct VoteRecord {
  std::size_t instance_index = 0;
  double v_plus = 0;
  double v_minus = 0;
  bool removed = false;
};

// Utility-weighted vote on one instance. Conforming rules that agree with
// its label add U_s to the positive side, which starts at the keep bias D;
// disagreeing ones add to the negative side, which starts at 0. The instance
// is removed when v_plus - v_minus < 0.
inline VoteRecord vote(const Instance& instance, const std::vector<OperationalRule>& rules,
                       const std::vector<RuleScore>& scores, double keep_bias, std::size_t index = 0) {
  if (rules.size() != scores.size()) throw RangeError("vote: rules and scores are not aligned");
  detail::require_unit(keep_bias, "D");
  VoteRecord rec;
  rec.instance_index = index;
  rec.v_plus = keep_bias;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    if (!conforms(instance, rules[r])) continue;
    if (instance.class_label == rules[r].class_label)
      rec.v_plus = utility_union(rec.v_plus, scores[r].sample_utility);
    else
      rec.v_minus = utility_union(rec.v_minus, scores[r].sample_utility);
  }
  rec.removed = rec.v_plus - rec.v_minus < 0.0;
  return rec;
}

struct PruneResult {
  Dataset kept;
  std::vector<VoteRecord> records;  // one per original instance, in input order
  std::size_t removed = 0;
};

// Votes on every original instance and drops the rejected ones. Virtual
// instances are not voted on and pass through unchanged. Order is preserved.
inline PruneResult prune(const Dataset& dataset, const std::vector<OperationalRule>& rules,
                         const std::vector<RuleScore>& scores, double keep_bias, unsigned threads = 1) {
  if (rules.size() != scores.size()) throw RangeError("prune: rules and scores are not aligned");
  detail::require_unit(keep_bias, "D");
  for (const auto& r : rules) check_rule_schema(r, dataset.schema());

  std::vector<std::size_t> originals;
  for (std::size_t i = 0; i < dataset.size(); ++i)
    if (!dataset[i].provenance.is_virtual) originals.push_back(i);

  PruneResult out;
  out.records.resize(originals.size());
  parallel_for(originals.size(), threads, [&](std::size_t j) {
    out.records[j] = vote(dataset[originals[j]], rules, scores, keep_bias, originals[j]);
  });

  std::vector<bool> drop(dataset.size(), false);
  for (const auto& rec : out.records) {
    if (!rec.removed) continue;
    drop[rec.instance_index] = true;
    ++out.removed;
  }
  std::vector<std::size_t> keep_rows;
  keep_rows.reserve(dataset.size() - out.removed);
  for (std::size_t i = 0; i < dataset.size(); ++i)
    if (!drop[i]) keep_rows.push_back(i);
  out.kept = dataset.subset(keep_rows);
  return out;
}

// TSV: instance_index, v_plus, v_minus, removed
inline void write_votes_tsv(const std::vector<VoteRecord>& records, std::ostream& out) {
  out << "instance_index\tv_plus\tv_minus\tremoved\n";
  for (const auto& r : records)
    out << r.instance_index << '\t' << format_fixed(r.v_plus) << '\t' << format_fixed(r.v_minus) << '\t'
        << (r.removed ? 1 : 0) << '\n';
}

}  // namespace rascal
