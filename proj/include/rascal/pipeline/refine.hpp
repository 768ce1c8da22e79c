#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/error.hpp"
#include "rascal/generate.hpp"
#include "rascal/prune.hpp"
#include "rascal/rules/format.hpp"
#include "rascal/rules/normalize.hpp"
#include "rascal/rules/operationalize.hpp"
#include "rascal/rules/parser.hpp"
#include "rascal/scoring.hpp"

namespace rascal {

struct RefineConfig {
  double virtual_ratio = 0.0;           // I
  double keep_bias = kDefaultKeepBias;  // D
  std::uint64_t seed = 0;
  std::size_t max_rules = kDefaultMaxRules;
  bool prune_enabled = true;
  bool generate_enabled = true;
  unsigned threads = 1;  // does not affect results

  void validate() const {
    if (!std::isfinite(virtual_ratio) || virtual_ratio < 0.0) throw RangeError("I must be a finite ratio >= 0");
    if (!(keep_bias >= 0.0 && keep_bias <= 1.0)) throw RangeError("D must lie in [0, 1]");
    if (max_rules == 0) throw RangeError("max_rules must be positive");
  }
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0;
};

struct RefineReport {
  RefineConfig config;
  std::size_t input_rules = 0;
  std::size_t class_rules = 0;
  std::size_t operational_rules = 0;
  std::size_t dropped_unsatisfiable = 0;
  std::size_t merged_duplicates = 0;
  std::size_t original_instances = 0;
  std::size_t generated = 0;
  std::size_t pruned = 0;
  std::size_t refined_instances = 0;
  std::size_t virtual_duplicates_of_originals = 0;
  std::size_t virtual_duplicates_among_virtual = 0;

  std::vector<OperationalRule> rules;
  std::vector<RuleScore> scores;
  std::vector<Allocation> allocations;
  std::vector<VoteRecord> votes;
  std::vector<StageTiming> timing;
};

struct RefineResult {
  Dataset refined;
  RefineReport report;
};

namespace detail {

template <typename F>
auto run_stage(std::string_view name, std::vector<StageTiming>& timing, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  auto record = [&] {
    std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    timing.push_back({std::string(name), ms.count()});
  };
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record();
    } else {
      auto r = f();
      record();
      return r;
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(std::string(name), e.what());
  }
}

}  // namespace detail

// Operationalize, score against the original data, generate, prune the
// originals, then emit the kept originals in input order followed by the
// virtual instances. Errors are rethrown as StageError naming the stage.
inline RefineResult refine(const Ruleset& ruleset, const Dataset& dataset, const RefineConfig& config) {
  RefineResult out;
  RefineReport& rep = out.report;
  auto& timing = rep.timing;
  detail::run_stage("config", timing, [&] { config.validate(); });
  rep.config = config;
  rep.input_rules = ruleset.size();
  rep.original_instances = dataset.size();

  detail::run_stage("validate", timing, [&] { require_valid(ruleset); });
  auto ops = detail::run_stage("operationalize", timing, [&] { return operationalize(ruleset, config.max_rules); });
  rep.class_rules = ops.class_rules;
  rep.operational_rules = ops.rules.size();
  rep.dropped_unsatisfiable = ops.dropped_unsatisfiable;
  rep.merged_duplicates = ops.merged_duplicates;
  rep.rules = std::move(ops.rules);

  rep.scores = detail::run_stage("score", timing, [&] { return score_all(dataset, rep.rules, config.threads); });

  std::vector<Instance> virtuals;
  if (config.generate_enabled) {
    auto gen = detail::run_stage("generate", timing, [&] {
      return generate_all(dataset, rep.rules, rep.scores, config.virtual_ratio, config.seed, config.threads);
    });
    rep.allocations = std::move(gen.allocations);
    rep.virtual_duplicates_of_originals = gen.duplicates_of_originals;
    rep.virtual_duplicates_among_virtual = gen.duplicates_among_virtual;
    virtuals = std::move(gen.instances);
  }
  rep.generated = virtuals.size();

  if (config.prune_enabled) {
    auto pr = detail::run_stage("prune", timing, [&] {
      return prune(dataset, rep.rules, rep.scores, config.keep_bias, config.threads);
    });
    rep.votes = std::move(pr.records);
    rep.pruned = pr.removed;
    out.refined = std::move(pr.kept);
  } else {
    out.refined = dataset;
  }

  detail::run_stage("emit", timing, [&] {
    out.refined.reserve(out.refined.size() + virtuals.size());
    for (auto& v : virtuals) out.refined.add(std::move(v));
  });
  rep.refined_instances = out.refined.size();
  return out;
}

inline RefineResult refine(std::string_view ruleset_text, const Dataset& dataset, const RefineConfig& config) {
  std::vector<StageTiming> parse_timing;
  Ruleset ruleset =
      detail::run_stage("parse", parse_timing, [&] { return parse_ruleset(ruleset_text, dataset.schema()); });
  RefineResult out = refine(ruleset, dataset, config);
  out.report.timing.insert(out.report.timing.begin(), parse_timing.begin(), parse_timing.end());
  return out;
}

// Key-value summary followed by the rule, score, allocation and vote tables.
// Timing is wall-clock and therefore only written when asked for, so that
// identical runs give byte-identical reports.
inline void write_report(const RefineReport& rep, const Schema& schema, std::ostream& out,
                         bool include_timing = false) {
  out << "# rascal refine report\n";
  out << "[summary]\n";
  out << "input_rules: " << rep.input_rules << '\n';
  out << "class_rules: " << rep.class_rules << '\n';
  out << "operational_rules: " << rep.operational_rules << '\n';
  out << "dropped_unsatisfiable: " << rep.dropped_unsatisfiable << '\n';
  out << "merged_duplicates: " << rep.merged_duplicates << '\n';
  out << "original_instances: " << rep.original_instances << '\n';
  out << "virtual_generated: " << rep.generated << '\n';
  out << "pruned: " << rep.pruned << '\n';
  out << "refined_instances: " << rep.refined_instances << '\n';
  out << "virtual_duplicates_of_originals: " << rep.virtual_duplicates_of_originals << '\n';
  out << "virtual_duplicates_among_virtual: " << rep.virtual_duplicates_among_virtual << '\n';
  out << "[config]\n";
  out << "I: " << format_fixed(rep.config.virtual_ratio) << '\n';
  out << "D: " << format_fixed(rep.config.keep_bias) << '\n';
  out << "seed: " << rep.config.seed << '\n';
  out << "max_rules: " << rep.config.max_rules << '\n';
  out << "prune: " << (rep.config.prune_enabled ? "true" : "false") << '\n';
  out << "generate: " << (rep.config.generate_enabled ? "true" : "false") << '\n';
  if (include_timing) {
    out << "[timing_ms]\n";
    for (const auto& t : rep.timing) out << t.stage << ": " << format_fixed(t.milliseconds, 3) << '\n';
  }
  out << "[rules]\n";
  out << "rule_id\tsource_rule\trule\n";
  for (std::size_t i = 0; i < rep.rules.size(); ++i)
    out << i << '\t' << rep.rules[i].origin << '\t' << to_string(rep.rules[i], schema) << '\n';
  out << "[scores]\n";
  write_scores_tsv(rep.scores, out);
  out << "[allocations]\n";
  write_allocations_tsv(rep.allocations, out);
  out << "[votes]\n";
  write_votes_tsv(rep.votes, out);
}

}  // namespace rascal
