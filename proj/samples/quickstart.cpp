// Refines the five-feature sample dataset with its three-level ruleset and
// prints the operational rules, their scores and the refined dataset size.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rascal/rascal.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path(RASCAL_SAMPLE_DIR) / "example_ruleset";

  rascal::Schema schema = rascal::load_schema(dir / "schema.txt");
  rascal::Dataset data = rascal::load_csv(dir / "data.csv", "class", schema);
  std::ifstream rules_in(dir / "rules.txt");
  std::stringstream rules;
  rules << rules_in.rdbuf();

  rascal::RefineConfig config;
  config.virtual_ratio = 0.43;
  config.keep_bias = 0.6;
  config.seed = 7;

  rascal::RefineResult result = rascal::refine(rules.str(), data, config);
  rascal::write_operational_rules(result.report.rules, schema, std::cout);
  rascal::write_scores_tsv(result.report.scores, std::cout);
  std::cout << "N=" << data.size() << " generated=" << result.report.generated
            << " pruned=" << result.report.pruned << " refined=" << result.refined.size() << '\n';
  return 0;
}
