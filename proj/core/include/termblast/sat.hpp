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

#include <cstdint>
#include <vector>

#include "termblast/aig.hpp"

namespace termblast {

enum class SatVerdict { Sat, Unsat, Unknown };

struct SatStats {
  uint64_t conflicts = 0;
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t restarts = 0;
};

/// Conflict-driven clause-learning solver over CNF: two watched literals,
/// first-UIP learning, Luby restarts, phase saving, no preprocessing.
/// One-shot: build, add clauses, solve once.
class CdclSolver {
 public:
  explicit CdclSolver(int num_vars);

  /// Clause literals in DIMACS convention (nonzero, var = |lit| in
  /// [1, num_vars], negative = negated).
  void add_clause(const std::vector<int>& lits);

  /// conflict_budget 0 means unlimited.
  SatVerdict solve(uint64_t conflict_budget = 0);

  /// Model value for DIMACS var (valid after Sat); unassigned vars are
  /// false.
  bool model_value(int var) const;

  const SatStats& stats() const { return stats_; }

 private:
  struct Clause {
    std::vector<int> lits;  // internal literals
  };
  struct Watcher {
    uint32_t cref;
    int blocker;
  };

  static int ilit(int dimacs);  // DIMACS -> internal (2v or 2v+1)
  int value_lit(int lit) const;
  void enqueue(int lit, uint32_t reason);
  bool propagate(uint32_t& confl);
  void analyze(uint32_t confl, std::vector<int>& learnt, int& bt_level);
  void cancel_until(int level);
  int pick_branch();
  void attach(uint32_t cref);
  void bump(int var);

  int nvars_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<int8_t> assign_;      // per var: -1 undef, 0 false, 1 true
  std::vector<int8_t> phase_;       // saved polarity
  std::vector<uint32_t> reason_;
  std::vector<int> level_;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;
  bool ok_ = true;
  SatStats stats_;
};

/// Satisfiability of root ∧ assumptions over the AIG, via Tseitin
/// encoding and the embedded CDCL solver. On Sat, `model` maps every
/// input variable in the query's cone (others default false) and
/// satisfies all roots.
struct SatResult {
  SatVerdict verdict = SatVerdict::Unknown;
  BoolEnv model;
  SatStats stats;
};

SatResult sat_check(const AigMan& m, Bfr root, const std::vector<Bfr>& assumptions = {},
                    uint64_t conflict_budget = 0);

}  // namespace termblast
