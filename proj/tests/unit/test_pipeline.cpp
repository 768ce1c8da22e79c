#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "rascal/rascal.hpp"
#include "support/oracles.hpp"

namespace rascal {
namespace {

const char* kRules = "class <- x1 & x2.\nclass <- x3 & !x4.\nclass=F <- !x1 & !x3.\n";

Dataset consistent_dataset() {
  Schema s = boolean_schema(6);
  // rules above hold exactly: T when x1&x2 or x3&!x4, F otherwise
  return testing::exhaustive_dataset(s, [](const std::vector<ValueId>& a) {
    return ValueId((a[0] & a[1]) | (a[2] & (1 - a[3])));
  });
}

// The concept behind kRules over 8 features, with 20% label noise.
Dataset noisy_dataset(std::uint64_t seed) {
  Rng rng(seed);
  DnfConcept c{8, {{{0, true}, {1, true}}, {{2, true}, {3, false}}}};
  return sample_concept(c, 150, 0.2, rng).data;
}

std::string report_text(const RefineResult& r, const Schema& s) {
  std::ostringstream out;
  write_report(r.report, s, out);
  return out.str();
}

TEST(Refine, NoOpConfigurationReturnsInput) {
  Dataset d = noisy_dataset(1);
  RefineConfig cfg;
  cfg.virtual_ratio = 0.0;
  cfg.prune_enabled = false;
  auto r = refine(kRules, d, cfg);
  EXPECT_EQ(r.refined, d);
  EXPECT_EQ(r.report.generated, 0u);
  EXPECT_EQ(r.report.pruned, 0u);
}

TEST(Refine, ConsistentDataKeepsEverything) {
  Dataset d = consistent_dataset();
  RefineConfig cfg;
  cfg.virtual_ratio = 0.43;
  auto r = refine(kRules, d, cfg);
  EXPECT_EQ(r.report.pruned, 0u);
  EXPECT_EQ(r.refined.size(), d.size() + virtual_budget(0.43, d.size()));
  EXPECT_EQ(r.refined.size(), 64u + 28u);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(r.refined[i], d[i]);
  for (std::size_t i = d.size(); i < r.refined.size(); ++i) EXPECT_TRUE(r.refined[i].provenance.is_virtual);
}

TEST(Refine, ReportArithmeticHolds) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Dataset d = noisy_dataset(seed);
    RefineConfig cfg;
    cfg.virtual_ratio = 0.1 * static_cast<double>(seed % 5);
    cfg.keep_bias = 0.5 + 0.02 * static_cast<double>(seed);
    cfg.seed = seed;
    auto r = refine(kRules, d, cfg);
    const auto& rep = r.report;
    EXPECT_EQ(rep.refined_instances, rep.original_instances - rep.pruned + rep.generated);
    EXPECT_EQ(r.refined.size(), rep.refined_instances);
    EXPECT_EQ(rep.input_rules, 3u);
    EXPECT_EQ(rep.operational_rules, 3u);
    EXPECT_EQ(rep.votes.size(), d.size());
    EXPECT_EQ(rep.scores.size(), rep.rules.size());
  }
}

TEST(Refine, PruningOnlyTouchesOriginals) {
  Dataset d = noisy_dataset(3);
  RefineConfig cfg;
  cfg.virtual_ratio = 0.5;
  auto r = refine(kRules, d, cfg);
  std::size_t originals = 0;
  for (const auto& inst : r.refined.instances()) originals += inst.provenance.is_virtual ? 0 : 1;
  EXPECT_EQ(originals, d.size() - r.report.pruned);
  EXPECT_EQ(r.refined.size() - originals, r.report.generated);
}

TEST(Refine, StagesAreIsolated) {
  Dataset d = noisy_dataset(4);
  RefineConfig full;
  full.virtual_ratio = 0.4;
  full.seed = 9;
  RefineConfig gen_only = full;
  gen_only.prune_enabled = false;
  RefineConfig prune_only = full;
  prune_only.generate_enabled = false;

  auto a = refine(kRules, d, full);
  auto g = refine(kRules, d, gen_only);
  auto p = refine(kRules, d, prune_only);
  ASSERT_GT(a.report.pruned, 0u);
  EXPECT_EQ(g.report.pruned, 0u);
  EXPECT_EQ(g.report.generated, a.report.generated);
  EXPECT_EQ(p.report.generated, 0u);
  EXPECT_EQ(p.report.pruned, a.report.pruned);

  // full = prune-only originals followed by generate-only virtuals
  Dataset composed = p.refined;
  for (std::size_t i = d.size(); i < g.refined.size(); ++i) composed.add(g.refined[i]);
  EXPECT_EQ(composed, a.refined);
}

TEST(Refine, DeterministicAcrossRunsAndThreads) {
  Dataset d = noisy_dataset(5);
  RefineConfig cfg;
  cfg.virtual_ratio = 0.8;
  cfg.seed = 77;
  auto a = refine(kRules, d, cfg);
  cfg.threads = 4;
  auto b = refine(kRules, d, cfg);
  EXPECT_EQ(a.refined, b.refined);
  EXPECT_EQ(report_text(a, d.schema()), report_text(b, d.schema()));
  cfg.seed = 78;
  EXPECT_NE(refine(kRules, d, cfg).refined, a.refined);
}

TEST(Refine, ErrorsNameTheStage) {
  Dataset d = noisy_dataset(6);
  RefineConfig cfg;
  auto stage_of = [&](const std::string& rules, const RefineConfig& c) -> std::string {
    try {
      refine(rules, d, c);
    } catch (const StageError& e) {
      return e.stage();
    }
    return "";
  };
  EXPECT_EQ(stage_of("class <- x1 &", cfg), "parse");
  EXPECT_EQ(stage_of("s <- t.\nt <- s.\nclass <- s.", cfg), "validate");
  EXPECT_EQ(stage_of("class <- (x1 | x2) & (x3 | x4) & (x5 | x6).", [] {
              RefineConfig c;
              c.max_rules = 4;
              return c;
            }()),
            "operationalize");
  RefineConfig bad = cfg;
  bad.keep_bias = 1.5;
  EXPECT_EQ(stage_of(kRules, bad), "config");
  RefineConfig unscorable = cfg;
  unscorable.virtual_ratio = 0.5;
  EXPECT_EQ(stage_of("class <- x1 & !x1 | x2 & !x2.", unscorable), "generate");
}

TEST(Refine, EmptyDatasetFailsInScoring) {
  Dataset d(boolean_schema(6));
  try {
    refine(kRules, d, RefineConfig{});
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "score");
  }
}

TEST(Report, SectionsAndNoTimingByDefault) {
  Dataset d = consistent_dataset();
  RefineConfig cfg;
  cfg.virtual_ratio = 0.43;
  cfg.seed = 3;
  auto r = refine(kRules, d, cfg);
  std::string text = report_text(r, d.schema());
  for (const char* section : {"[summary]", "[config]", "[rules]", "[scores]", "[allocations]", "[votes]"})
    EXPECT_NE(text.find(section), std::string::npos) << section;
  EXPECT_EQ(text.find("[timing_ms]"), std::string::npos);
  EXPECT_NE(text.find("operational_rules: 3\n"), std::string::npos);
  EXPECT_NE(text.find("virtual_generated: 28\n"), std::string::npos);
  EXPECT_NE(text.find("seed: 3\n"), std::string::npos);
  EXPECT_NE(text.find("class=T <- x1=T & x2=T."), std::string::npos);
  std::ostringstream timed;
  write_report(r.report, d.schema(), timed, true);
  EXPECT_NE(timed.str().find("[timing_ms]"), std::string::npos);
}

}  // namespace
}  // namespace rascal
