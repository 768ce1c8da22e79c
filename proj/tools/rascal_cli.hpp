#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rascal/rascal.hpp"
#include "rascal/io.hpp"

namespace rascal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

struct InputOptions {
  std::string rules;
  std::string data;
  std::string format = "csv";
  std::string class_column = "class";
  std::string schema;
  std::size_t max_rules = kDefaultMaxRules;
  unsigned threads = 1;
};

inline void add_input_options(CLI::App* cmd, InputOptions& in, bool data_required = true) {
  cmd->add_option("--rules", in.rules, "Rule file")->required()->check(CLI::ExistingFile);
  auto* data = cmd->add_option("--data", in.data, "Dataset file")->check(CLI::ExistingFile);
  if (data_required) data->required();
  cmd->add_option("--format", in.format, "Dataset format")->check(CLI::IsMember({"csv", "uci"}))->capture_default_str();
  cmd->add_option("--class-column", in.class_column, "Name of the class column (csv)")->capture_default_str();
  cmd->add_option("--schema", in.schema, "Schema file overriding inferred domains (csv)")->check(CLI::ExistingFile);
  cmd->add_option("--max-rules", in.max_rules, "Upper bound on operational rules")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", in.threads, "Worker threads; results do not depend on it")->capture_default_str();
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::optional<Schema> load_schema_option(const InputOptions& in) {
  if (in.schema.empty()) return std::nullopt;
  return load_schema(std::filesystem::path(in.schema));
}

inline Dataset load_dataset(const InputOptions& in) {
  try {
    if (in.format == "uci") return load_uci_molbio(std::filesystem::path(in.data));
    return load_csv(std::filesystem::path(in.data), in.class_column, load_schema_option(in));
  } catch (const std::exception& e) {
    throw StageError("load", e.what());
  }
}

inline Ruleset load_rules(const InputOptions& in, const Schema& schema) {
  std::string text = read_text(in.rules);
  try {
    return parse_ruleset(text, schema);
  } catch (const std::exception& e) {
    throw StageError("parse " + in.rules, e.what());
  }
}

inline void write_output(const std::string& path, std::ostream& fallback,
                         const std::function<void(std::ostream&)>& fill) {
  if (path.empty() || path == "-") {
    fill(fallback);
  } else {
    atomic_write(path, fill);
  }
}

// Entry point of the `rascal` tool. Exit codes: 0 success, 1 usage error,
// 2 data or rule error.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Rule-assisted sample creation and deletion for nominal datasets", "rascal"};
  app.require_subcommand(1);

  // refine
  InputOptions refine_in;
  RefineConfig refine_cfg;
  std::string refine_out, refine_report;
  bool no_prune = false, no_generate = false, provenance = false, timing = false;
  auto* refine_cmd = app.add_subcommand("refine", "Generate virtual samples and prune the dataset");
  add_input_options(refine_cmd, refine_in);
  refine_cmd->add_option("--out", refine_out, "Refined dataset (csv)")->required();
  refine_cmd->add_option("-I", refine_cfg.virtual_ratio, "Virtual samples as a fraction of N")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  refine_cmd->add_option("-D", refine_cfg.keep_bias, "Inherent utility of each instance")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  refine_cmd->add_option("--seed", refine_cfg.seed, "Random seed")->envname("RASCAL_SEED")->capture_default_str();
  refine_cmd->add_flag("--no-prune", no_prune, "Skip pruning");
  refine_cmd->add_flag("--no-generate", no_generate, "Skip virtual sample generation");
  refine_cmd->add_option("--report", refine_report, "Report path (default <out>.report.txt)");
  refine_cmd->add_flag("--provenance", provenance, "Append a __provenance column to the output");
  refine_cmd->add_flag("--timing", timing, "Include stage timings in the report");

  // score
  InputOptions score_in;
  std::string score_out;
  auto* score_cmd = app.add_subcommand("score", "Score operational rules against a dataset (TSV)");
  add_input_options(score_cmd, score_in);
  score_cmd->add_option("--out", score_out, "Output path (default stdout)");

  // operationalize
  InputOptions op_in;
  std::string op_out;
  auto* op_cmd = app.add_subcommand("operationalize", "Print the operational form of a ruleset");
  add_input_options(op_cmd, op_in, false);
  op_cmd->add_option("--out", op_out, "Output path (default stdout)");

  // eval
  InputOptions eval_in;
  RefineConfig eval_cfg;
  ExperimentSpec spec;
  std::string eval_out;
  bool eval_no_prune = false;
  auto* eval_cmd = app.add_subcommand("eval", "Compare k-NN accuracy on original and refined training data");
  add_input_options(eval_cmd, eval_in);
  eval_cmd->add_option("--fractions", spec.train_fractions, "Train fractions for the learning curve")
      ->delimiter(',');
  eval_cmd->add_option("--I-sweep", spec.virtual_ratios, "Values of I for the budget curve")->delimiter(',');
  eval_cmd->add_option("--sweep-fraction", spec.sweep_fraction, "Train fraction used by the I sweep")
      ->capture_default_str();
  eval_cmd->add_option("--trials", spec.trials, "Trials per point")->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_option("--k", spec.k, "Neighbours")->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_option("--seed", spec.seed, "Random seed")->envname("RASCAL_SEED")->capture_default_str();
  eval_cmd->add_option("-I", eval_cfg.virtual_ratio, "I used by the learning curve")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  eval_cmd->add_option("-D", eval_cfg.keep_bias, "Inherent utility of each instance")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  eval_cmd->add_flag("--no-prune", eval_no_prune, "Skip pruning");
  eval_cmd->add_flag("--virtual-only", spec.virtual_only, "Train the refined side on virtual samples only");
  eval_cmd->add_option("--out-tsv", eval_out, "Curve TSV path (default stdout)");

  std::vector<std::string> argv_store{"rascal"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (refine_cmd->parsed()) {
      Dataset data = load_dataset(refine_in);
      Ruleset rules = load_rules(refine_in, data.schema());
      refine_cfg.max_rules = refine_in.max_rules;
      refine_cfg.threads = refine_in.threads;
      refine_cfg.prune_enabled = !no_prune;
      refine_cfg.generate_enabled = !no_generate;
      RefineResult result = refine(rules, data, refine_cfg);
      std::ostringstream report;
      write_report(result.report, data.schema(), report, timing);
      std::ostringstream csv;
      save_csv(result.refined, csv, provenance);
      const std::string report_path = refine_report.empty() ? refine_out + ".report.txt" : refine_report;
      atomic_write(refine_out, [&](std::ostream& o) { o << csv.str(); });
      atomic_write(report_path, [&](std::ostream& o) { o << report.str(); });
      err << "refined " << result.report.original_instances << " -> " << result.report.refined_instances
          << " instances (" << result.report.generated << " generated, " << result.report.pruned << " pruned)\n";
    } else if (score_cmd->parsed()) {
      Dataset data = load_dataset(score_in);
      Ruleset rules = load_rules(score_in, data.schema());
      auto ops = operationalize(rules, score_in.max_rules);
      auto scores = score_all(data, ops.rules, score_in.threads);
      write_output(score_out, out, [&](std::ostream& o) { write_scores_tsv(scores, o); });
    } else if (op_cmd->parsed()) {
      Schema schema;
      if (!op_in.data.empty()) schema = load_dataset(op_in).schema();
      else if (!op_in.schema.empty()) schema = load_schema(std::filesystem::path(op_in.schema));
      else {
        err << "error: operationalize needs --data or --schema to bind features\n\n" << op_cmd->help();
        return kExitUsage;
      }
      Ruleset rules = load_rules(op_in, schema);
      auto ops = operationalize(rules, op_in.max_rules);
      write_output(op_out, out, [&](std::ostream& o) { write_operational_rules(ops.rules, schema, o); });
      err << rules.size() << " input rules -> " << ops.rules.size() << " operational rules ("
          << ops.dropped_unsatisfiable << " dropped as unsatisfiable)\n";
    } else if (eval_cmd->parsed()) {
      if (spec.train_fractions.empty() && spec.virtual_ratios.empty()) {
        err << "error: eval needs --fractions and/or --I-sweep\n\n" << eval_cmd->help();
        return kExitUsage;
      }
      Dataset data = load_dataset(eval_in);
      Ruleset rules = load_rules(eval_in, data.schema());
      eval_cfg.max_rules = eval_in.max_rules;
      eval_cfg.prune_enabled = !eval_no_prune;
      spec.threads = eval_in.threads;
      ComparisonResult result = run_comparison(data, rules, eval_cfg, spec);
      write_output(eval_out, out, [&](std::ostream& o) { write_curve_tsv(result.points, o); });
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace rascal::cli
