// Copyright 2026 The Termblast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "termblast/prover.hpp"

namespace {

// Config-file keys mirror the command-line flags.
void apply_config_file(const std::string& path, termblast::ProveConfig& config) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  f >> j;
  if (j.contains("sat_budget")) config.final_sat_budget = j["sat_budget"].get<uint64_t>();
  if (j.contains("pathcond_sat_budget"))
    config.limits.pathcond_sat_budget = j["pathcond_sat_budget"].get<uint64_t>();
  if (j.contains("interp_depth")) config.limits.interp_depth = j["interp_depth"].get<int>();
  if (j.contains("eval_depth")) config.limits.eval_depth = j["eval_depth"].get<int>();
  if (j.contains("backchain_depth"))
    config.limits.backchain_depth = j["backchain_depth"].get<int>();
  if (j.contains("rewrite_steps"))
    config.limits.rewrite_steps = j["rewrite_steps"].get<uint64_t>();
  if (j.contains("constraint_tuple_cap"))
    config.limits.constraint_tuple_cap = j["constraint_tuple_cap"].get<uint64_t>();
  if (j.contains("seed")) config.seed = j["seed"].get<uint64_t>();
  if (j.contains("cov_samples")) config.cov_samples = j["cov_samples"].get<size_t>();
  if (j.contains("trace_rewrites")) config.trace_rewrites = j["trace_rewrites"].get<bool>();
  if (j.contains("dump_bvar_db")) config.dump_bvar_db = j["dump_bvar_db"].get<bool>();
  if (j.contains("dimacs_dir")) config.dimacs_dir = j["dimacs_dir"].get<std::string>();
  if (j.contains("export_only")) config.export_only = j["export_only"].get<bool>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termblast: a term-level bit-blasting theorem prover"};
  app.require_subcommand(1);

  CLI::App* prove = app.add_subcommand("prove", "load event files and run their theorems");
  std::vector<std::string> files;
  std::string config_path, summary_path;
  termblast::ProveConfig config;
  bool print_rules = false;
  unsigned jobs = 1;

  prove->add_option("files", files, "event files, processed in order")
      ->required()
      ->check(CLI::ExistingFile);
  prove->add_flag("--trace-rewrites", config.trace_rewrites,
                  "log every rewrite attempt (rule, unify, hyps, outcome)");
  prove->add_flag("--dump-bvar-db", config.dump_bvar_db,
                  "print the Boolean variable database after each theorem");
  prove->add_flag("--print-rules", print_rules, "dump the indexed rule database");
  prove->add_option("--sat-budget", config.final_sat_budget,
                    "conflict budget for the final validity check (0 = unlimited)");
  prove->add_option("--pathcond-budget", config.limits.pathcond_sat_budget,
                    "conflict budget for path-condition checks");
  prove->add_option("--backchain-limit", config.limits.backchain_depth,
                    "hypothesis backchaining depth limit");
  prove->add_option("--rewrite-limit", config.limits.rewrite_steps,
                    "rewrite steps per theorem before a loop is assumed");
  prove->add_option("--dimacs-dir", config.dimacs_dir,
                    "export each validity query as DIMACS CNF into this directory");
  prove->add_flag("--export-only", config.export_only,
                  "skip the embedded SAT check (use with --dimacs-dir for an "
                  "external solver)");
  prove->add_option("--interp-depth", config.limits.interp_depth,
                    "symbolic interpreter recursion limit");
  prove->add_option("--eval-depth", config.limits.eval_depth,
                    "concrete evaluator recursion limit");
  prove->add_option("--seed", config.seed, "random seed for coverage sampling");
  prove->add_option("--cov-samples", config.cov_samples,
                    "samples per coverage obligation (default 64)");
  prove->add_option("--jobs", jobs, "run independent files in parallel");
  prove->add_option("--config", config_path, "JSON config file (keys mirror the flags)");
  prove->add_option("--summary", summary_path,
                    "write one machine-readable record per theorem to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) apply_config_file(config_path, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (!summary_path.empty()) {
    // Summaries need per-theorem results, so run files sequentially.
    std::ofstream summary(summary_path);
    if (!summary) {
      std::cerr << "error: cannot open " << summary_path << "\n";
      return 2;
    }
    int code = 0;
    termblast::EventDb db = termblast::make_base_db();
    for (const std::string& p : files) {
      if (files.size() > 1) std::cout << "== " << p << " ==\n";
      termblast::FileResult fr = termblast::run_file(p, config, std::cout, db, print_rules);
      for (const termblast::ProofResult& r : fr.results)
        summary << termblast::format_summary_line(r) << "\n";
      if (fr.tool_error) code = 2;
      else if (!fr.ok && code == 0) code = 1;
    }
    return code;
  }

  return termblast::run_files(files, config, std::cout, print_rules, jobs);
}
