#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/error.hpp"
#include "rascal/eval/knn.hpp"
#include "rascal/eval/split.hpp"
#include "rascal/parallel.hpp"
#include "rascal/pipeline/refine.hpp"
#include "rascal/random.hpp"
#include "rascal/rules/parser.hpp"

namespace rascal {

struct ExperimentSpec {
  std::vector<double> train_fractions;  // learning-curve sweep
  std::vector<double> virtual_ratios;   // budget sweep over I
  double sweep_fraction = 1.0;          // train fraction used by the I sweep
  std::size_t trials = 20;
  std::size_t k = kDefaultNeighbours;
  std::uint64_t seed = 0;
  bool virtual_only = false;  // refined side trains on the virtual samples alone
  std::size_t cv_folds = 10;  // protocol used when a train fraction is 1
  unsigned threads = 1;

  void validate() const {
    auto check_fraction = [](double f) {
      if (!(f > 0.0 && f <= 1.0)) throw RangeError("train fractions must lie in (0, 1]");
    };
    for (double f : train_fractions) check_fraction(f);
    check_fraction(sweep_fraction);
    for (double i : virtual_ratios)
      if (!(i >= 0.0) || !std::isfinite(i)) throw RangeError("I sweep values must be finite and >= 0");
    if (trials == 0) throw RangeError("trials must be at least 1");
    if (k == 0) throw RangeError("k must be at least 1");
  }
};

struct CurvePoint {
  enum class Axis { TrainFraction, VirtualRatio };
  Axis axis = Axis::TrainFraction;
  double x = 0;
  double mean_original = 0;
  double sd_original = 0;
  double mean_refined = 0;
  double sd_refined = 0;
  std::vector<double> original_trials;
  std::vector<double> refined_trials;
};

// Accuracy of k-NN on one split, trained on the original and on the refined
// training data.
struct SplitOutcome {
  double original = 0;
  double refined = 0;
  std::size_t generated = 0;
  std::size_t pruned = 0;
};

struct ComparisonResult {
  std::vector<CurvePoint> points;
  std::size_t operational_rules = 0;
  double mean_generated = 0;  // per refinement, over every split evaluated
  double mean_pruned = 0;
};

// Refines `train` only and scores both training sets against `test`, which
// is never touched by refinement.
inline SplitOutcome evaluate_split(const Dataset& train, const Dataset& test, const Ruleset& ruleset,
                                   const RefineConfig& config, std::size_t k, bool virtual_only = false) {
  RefineConfig cfg = config;
  cfg.threads = 1;
  if (virtual_only) {
    cfg.generate_enabled = true;
    cfg.prune_enabled = false;
  }
  RefineResult refined = refine(ruleset, train, cfg);
  SplitOutcome out;
  out.generated = refined.report.generated;
  out.pruned = refined.report.pruned;
  out.original = knn_accuracy(train, test, k);
  if (virtual_only) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < refined.refined.size(); ++i)
      if (refined.refined[i].provenance.is_virtual) rows.push_back(i);
    if (rows.empty()) throw DataError("virtual-only evaluation produced no virtual samples");
    out.refined = knn_accuracy(refined.refined.subset(rows), test, k);
  } else {
    out.refined = knn_accuracy(refined.refined, test, k);
  }
  return out;
}

namespace detail {

inline double mean(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

inline double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct TrialResult {
  double original = 0;
  double refined = 0;
  double generated = 0;
  double pruned = 0;
  std::size_t refinements = 0;
};

// One trial at one train fraction: a random stratified holdout, or stratified
// cross-validation when the fraction is 1 (pooled accuracy over folds).
inline TrialResult run_trial(const Dataset& data, const Ruleset& ruleset, RefineConfig config,
                             const ExperimentSpec& spec, double fraction, Rng rng) {
  TrialResult out;
  std::vector<Split> splits;
  if (fraction >= 1.0) splits = stratified_folds(data, spec.cv_folds, rng);
  else splits.push_back(stratified_split(data, fraction, rng));

  double correct_orig = 0, correct_ref = 0, tested = 0;
  for (const Split& s : splits) {
    if (s.test.empty()) continue;
    config.seed = rng();
    Dataset train = data.subset(s.train);
    Dataset test = data.subset(s.test);
    SplitOutcome o = evaluate_split(train, test, ruleset, config, spec.k, spec.virtual_only);
    const auto n = static_cast<double>(test.size());
    correct_orig += o.original * n;
    correct_ref += o.refined * n;
    tested += n;
    out.generated += static_cast<double>(o.generated);
    out.pruned += static_cast<double>(o.pruned);
    ++out.refinements;
  }
  if (tested == 0) throw DataError("train fraction leaves no test instances");
  out.original = correct_orig / tested;
  out.refined = correct_ref / tested;
  return out;
}

}  // namespace detail

// Learning-curve and budget sweeps. Each (sweep point, trial) pair draws its
// split and refinement seed from its own substream of spec.seed, so results
// are independent of spec.threads.
inline ComparisonResult run_comparison(const Dataset& data, const Ruleset& ruleset, const RefineConfig& config,
                                       const ExperimentSpec& spec) {
  spec.validate();
  config.validate();
  ComparisonResult out;
  out.operational_rules = operationalize(ruleset, config.max_rules).rules.size();

  struct Job {
    CurvePoint::Axis axis;
    double x;
    double fraction;
    double ratio;
  };
  std::vector<Job> jobs;
  for (double f : spec.train_fractions) jobs.push_back({CurvePoint::Axis::TrainFraction, f, f, config.virtual_ratio});
  for (double i : spec.virtual_ratios) jobs.push_back({CurvePoint::Axis::VirtualRatio, i, spec.sweep_fraction, i});

  std::vector<detail::TrialResult> results(jobs.size() * spec.trials);
  parallel_for(results.size(), spec.threads, [&](std::size_t idx) {
    const std::size_t j = idx / spec.trials;
    const std::size_t t = idx % spec.trials;
    RefineConfig cfg = config;
    cfg.virtual_ratio = jobs[j].ratio;
    const auto axis_tag = static_cast<std::uint64_t>(jobs[j].axis);
    results[idx] = detail::run_trial(data, ruleset, cfg, spec, jobs[j].fraction, substream(spec.seed, {axis_tag, j, t}));
  });

  double generated = 0, pruned = 0, refinements = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    CurvePoint p;
    p.axis = jobs[j].axis;
    p.x = jobs[j].x;
    for (std::size_t t = 0; t < spec.trials; ++t) {
      const auto& r = results[j * spec.trials + t];
      p.original_trials.push_back(r.original);
      p.refined_trials.push_back(r.refined);
      generated += r.generated;
      pruned += r.pruned;
      refinements += static_cast<double>(r.refinements);
    }
    p.mean_original = detail::mean(p.original_trials);
    p.sd_original = detail::sample_sd(p.original_trials);
    p.mean_refined = detail::mean(p.refined_trials);
    p.sd_refined = detail::sample_sd(p.refined_trials);
    out.points.push_back(std::move(p));
  }
  if (refinements > 0) {
    out.mean_generated = generated / refinements;
    out.mean_pruned = pruned / refinements;
  }
  return out;
}

inline ComparisonResult run_comparison(const Dataset& data, std::string_view ruleset_text,
                                       const RefineConfig& config, const ExperimentSpec& spec) {
  return run_comparison(data, parse_ruleset(ruleset_text, data.schema()), config, spec);
}

// Plot-ready TSV, one block per sweep: x, mean_orig, sd_orig, mean_refined, sd_refined.
inline void write_curve_tsv(const std::vector<CurvePoint>& points, std::ostream& out) {
  bool header_done[2] = {false, false};
  for (const auto& p : points) {
    const auto a = static_cast<std::size_t>(p.axis);
    if (!header_done[a]) {
      out << "# sweep: " << (p.axis == CurvePoint::Axis::TrainFraction ? "train_fraction" : "I") << '\n';
      out << "x\tmean_orig\tsd_orig\tmean_refined\tsd_refined\n";
      header_done[a] = true;
    }
    out << format_fixed(p.x, 4) << '\t' << format_fixed(p.mean_original) << '\t' << format_fixed(p.sd_original)
        << '\t' << format_fixed(p.mean_refined) << '\t' << format_fixed(p.sd_refined) << '\n';
  }
}

}  // namespace rascal
