#pragma once

#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/error.hpp"
#include "rascal/parallel.hpp"
#include "rascal/rules/literal.hpp"

namespace rascal {

struct RuleScore {
  std::size_t rule_id = 0;
  std::size_t length = 0;      // L(r)
  std::size_t matched = 0;     // M(r)
  std::size_t successful = 0;  // S(r)
  double correctness = 0;      // C(r)
  double scope = 0;            // E(r)
  double sample_utility = 0;   // U_s(r)
  double generality = 0;       // G(r)
  double utility = 0;          // U(r)
};

namespace detail {
inline void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw RangeError(std::string(what) + " must lie in [0, 1]");
}
}  // namespace detail

// C(r) = S / (M + 1)
inline double correctness(std::size_t successful, std::size_t matched) {
  if (successful > matched) throw RangeError("correctness: S exceeds M");
  return static_cast<double>(successful) / (static_cast<double>(matched) + 1.0);
}

// E(r) = M / N
inline double scope(std::size_t matched, std::size_t n) {
  if (n == 0) throw RangeError("scope: dataset is empty");
  if (matched > n) throw RangeError("scope: M exceeds N");
  return static_cast<double>(matched) / static_cast<double>(n);
}

// U_s(r) = C/2 + E/2
inline double sample_utility(double c, double e) {
  detail::require_unit(c, "correctness");
  detail::require_unit(e, "scope");
  return 0.5 * c + 0.5 * e;
}

// G(r) = (K - L) / K
inline double generality(std::size_t k, std::size_t length) {
  if (k == 0) throw RangeError("generality: schema has no features");
  if (length > k) throw RangeError("generality: rule has more literals than the schema has features");
  return static_cast<double>(k - length) / static_cast<double>(k);
}

// U(r) = C/3 + E/3 + G/3
inline double utility(double c, double e, double g) {
  detail::require_unit(c, "correctness");
  detail::require_unit(e, "scope");
  detail::require_unit(g, "generality");
  return (c + e + g) / 3.0;
}

// Score components from raw counts.
inline RuleScore make_score(std::size_t rule_id, std::size_t successful, std::size_t matched, std::size_t n,
                            std::size_t k, std::size_t length) {
  RuleScore s;
  s.rule_id = rule_id;
  s.length = length;
  s.matched = matched;
  s.successful = successful;
  s.correctness = correctness(successful, matched);
  s.scope = scope(matched, n);
  s.sample_utility = sample_utility(s.correctness, s.scope);
  s.generality = generality(k, length);
  s.utility = utility(s.correctness, s.scope, s.generality);
  return s;
}

// One score per rule, in rule order, computed against `dataset`.
inline std::vector<RuleScore> score_all(const Dataset& dataset, const std::vector<OperationalRule>& rules,
                                        unsigned threads = 1) {
  if (dataset.empty()) throw DataError("cannot score rules against an empty dataset");
  std::vector<RuleScore> out(rules.size());
  const std::size_t n = dataset.size();
  const std::size_t k = dataset.schema().num_features();
  parallel_for(rules.size(), threads, [&](std::size_t i) {
    MatchCounts mc = match_counts(dataset, rules[i]);
    out[i] = make_score(i, mc.successful, mc.matched, n, k, rules[i].length());
  });
  return out;
}

inline std::string format_fixed(double x, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

// TSV: rule_id, L, M, S, C, E, U_s, G, U
inline void write_scores_tsv(const std::vector<RuleScore>& scores, std::ostream& out) {
  out << "rule_id\tL\tM\tS\tC\tE\tU_s\tG\tU\n";
  for (const auto& s : scores) {
    out << s.rule_id << '\t' << s.length << '\t' << s.matched << '\t' << s.successful << '\t'
        << format_fixed(s.correctness) << '\t' << format_fixed(s.scope) << '\t' << format_fixed(s.sample_utility)
        << '\t' << format_fixed(s.generality) << '\t' << format_fixed(s.utility) << '\n';
  }
}

}  // namespace rascal
