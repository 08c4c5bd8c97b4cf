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

#pragma once

#include <iosfwd>

#include "termblast/ctrex.hpp"
#include "termblast/interp.hpp"
#include "termblast/prelude.hpp"

namespace termblast {

struct ProveConfig {
  InterpLimits limits;
  uint64_t final_sat_budget = 0;  // 0 = unlimited
  bool trace_rewrites = false;
  bool dump_bvar_db = false;
  std::string dimacs_dir;   // export the validity query when nonempty
  bool export_only = false;  // skip the embedded SAT check; verdicts are UNKNOWN
  uint64_t seed = 0;
  size_t cov_samples = 64;
};

enum class Verdict { Proved, Failed, FailedUnverified, Unknown };
const char* verdict_name(Verdict v);

struct ProofStats {
  size_t aig_nodes = 0;
  size_t bvars = 0;
  size_t constraints = 0;
  uint64_t sat_conflicts = 0;
  double wall_ms = 0.0;
};

struct CoverageGoal {
  SymbolId var;
  Term oblig;
  ObligSampleReport samples;
};

struct ProofResult {
  SymbolId name = 0;
  Verdict verdict = Verdict::Unknown;
  Assignment ctrex;
  CtrexVerdict ctrex_verdict;
  std::vector<CoverageGoal> coverage;
  ProofStats stats;
  std::vector<std::string> notes;
  std::string bvar_dump;
  std::string trace;

  bool matches(Expectation e) const {
    switch (e) {
      case Expectation::Prove:
        return verdict == Verdict::Proved;
      case Expectation::Fail:
        return verdict == Verdict::Failed;
      case Expectation::FailUnverified:
        return verdict == Verdict::FailedUnverified;
    }
    return false;
  }
};

/// A base database with the prelude loaded and the standard natives
/// (shape-spec-obj-in-range, random-int) registered.
EventDb make_base_db();

/// Runs one theorem end to end: build shape-spec bindings, interpret the
/// hypothesis (its Boolean function becomes the path condition), interpret
/// the conclusion, check hyp ∧ constraints ∧ ¬concl for satisfiability,
/// and classify the outcome. Interpreter failures propagate as exceptions;
/// a theorem is never silently proved.
ProofResult prove(const TheoremEvent& thm, const EventDb& db, const ProveConfig& config);

/// Renders a human-readable report for one result.
std::string format_result(const ProofResult& r);
/// One machine-readable record: key=value pairs on a single line.
std::string format_summary_line(const ProofResult& r);

struct FileResult {
  bool ok = true;        // all verdicts matched expectations
  bool tool_error = false;
  std::vector<ProofResult> results;
};

/// Processes a file's events in order against `db` (mutating it);
/// def-gl-thm events are proved with the database accumulated so far.
/// Reports stream to `out`.
FileResult run_file(const std::string& path, const ProveConfig& config, std::ostream& out,
                    EventDb& db, bool print_rules = false);

/// Convenience: runs one file against a fresh base database.
FileResult run_file(const std::string& path, const ProveConfig& config, std::ostream& out,
                    bool print_rules = false);

/// Runs several files. With jobs <= 1 the files share one database,
/// processed in order (theory files then theorem files compose). With
/// jobs > 1 files run in parallel and each must be self-contained.
/// Returns the overall exit code: 0 = all expected, 1 = proof failure,
/// 2 = tool error.
int run_files(const std::vector<std::string>& paths, const ProveConfig& config,
              std::ostream& out, bool print_rules = false, unsigned jobs = 1);

}  // namespace termblast
