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

#include "termblast/bvardb.hpp"
#include "termblast/sobj.hpp"

namespace termblast {

class InterpError : public std::runtime_error {
 public:
  explicit InterpError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class EquivCtx { Equal, Iff };

enum class Trivalent { True, False, Unknown };

struct InterpLimits {
  int interp_depth = 2000;
  int eval_depth = 10000;
  int backchain_depth = 100;
  uint64_t rewrite_steps = 10000;
  uint64_t pathcond_sat_budget = 1000;
  uint64_t constraint_tuple_cap = 10000;
};

struct InterpStats {
  uint64_t rewrite_attempts = 0;
  uint64_t rewrite_successes = 0;
  uint64_t concrete_evals = 0;
  uint64_t counterpart_hits = 0;
  uint64_t fncalls = 0;
};

/// One symbolic interpretation in progress: the AIG and variable database
/// being built, the rule database, the current path condition, limits,
/// and an optional trace sink. One InterpState per proof; never shared.
struct InterpState {
  InterpState(AigMan& aig, BvarDb& bvars, const EventDb& db)
      : aig(aig), bvars(bvars), db(db) {}

  AigMan& aig;
  BvarDb& bvars;
  const EventDb& db;
  Bfr pathcond = bfr_true;
  InterpLimits limits;
  InterpStats stats;
  std::function<void(const std::string&)> trace;
  std::function<void(const std::string&)> warn;

  int depth = 0;
  int backchain_used = 0;
  uint64_t rewrite_count = 0;

  void trace_line(const std::string& s) {
    if (trace) trace(s);
  }
};

using SymBindings = std::map<SymbolId, SymObj>;

/// Symbolically interprets a term under bindings. In iff context, results
/// are normalized up to truthiness (symbolic integers and conses collapse
/// to true, concrete values to their truthiness).
///
/// Soundness contract: for every environment consistent with the final
/// variable database and satisfying the path condition, the evaluation of
/// the result equals (ctx = Equal) or is iff-equivalent to (ctx = Iff)
/// the evaluation of the term under the evaluated bindings.
SymObj interp_term(const Term& t, const SymBindings& bindings, EquivCtx ctx,
                   InterpState& st);

/// Function-call reduction, tried in priority order: concrete evaluation,
/// rewrite rules, built-in symbolic counterpart, uninterpreted call
/// object, definition expansion. fn must not be if or quote.
SymObj interp_fncall(SymbolId fn, const std::vector<SymObj>& args, EquivCtx ctx,
                     InterpState& st);

/// Attempts one rewrite rule: unify, then syntaxp hypotheses over the
/// reflected substitution, then ordinary hypotheses by backchaining (each
/// must come out constant-true or implied by the path condition).
std::optional<BoundTerm> try_rewrite(const RewriteRule& rule, SymbolId fn,
                                     const std::vector<SymObj>& args, EquivCtx ctx,
                                     InterpState& st);

/// `if` handling: interpret the test in iff context, coerce to a Boolean
/// function, decide liveness via the path condition, interpret live
/// branches under updated path conditions, and merge.
SymObj interp_if(const Term& test, const Term& then, const Term& els,
                 const SymBindings& bindings, EquivCtx ctx, InterpState& st);

/// Coerces an interpreted if-test object to a Boolean function (the
/// nine-step coercion, including fresh-variable generation and constraint
/// instantiation for opaque calls).
Bfr simplify_if_test(const SymObj& o, InterpState& st);

/// Merges two branch results under non-constant test c: structural
/// equality, branch-merge rules on either orientation, same-function
/// argument merging, then the typed componentwise fallback.
SymObj merge_branches(Bfr c, const SymObj& then, const SymObj& els, EquivCtx ctx,
                      InterpState& st);

/// SAT-backed entailment by the path condition, within a conflict budget;
/// never wrong, only incomplete.
Trivalent pathcond_implies(InterpState& st, Bfr b);

/// Built-in symbolic counterpart for fn, if registered; returns nullopt
/// when the counterpart declines (falls through to later reductions).
std::optional<SymObj> run_counterpart(SymbolId fn, const std::vector<SymObj>& args,
                                      InterpState& st);
bool has_counterpart(SymbolId fn);

}  // namespace termblast
