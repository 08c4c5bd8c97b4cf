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
#include "termblast/shapespec.hpp"

namespace termblast {

/// Candidate theorem-variable assignment translated from a SAT model,
/// with a provenance log of the equations that produced it.
struct Assignment {
  ValueBindings vars;  // every theorem variable present (default nil)
  struct Step {
    std::string equation;  // "term = value"
    std::string result;    // "var := value" or why it was skipped
  };
  std::vector<Step> provenance;
  std::vector<std::string> unresolved;

  Value value_of(SymbolId var) const {
    auto it = vars.find(var);
    return it == vars.end() ? Value::nil() : it->second;
  }
};

/// An equation "rendered term = value" awaiting resolution; the term's
/// only variables are theorem variables.
struct PendingEq {
  Term term;
  Value value;
};

/// Resolves one equation: direct assignment when the term is a variable,
/// otherwise the first counterexample rule whose pattern matches fires
/// (evaluating its update guard-free) and the target subterm recurses
/// with fuel-1. Unresolvable equations are logged, never fatal.
void apply_ctrex_rules(const PendingEq& eq, Assignment& asg,
                       const std::vector<CtrexRule>& rules, const EventDb& defs,
                       int fuel);

/// Translates a SAT model into a theorem-variable assignment: decode
/// shape-specifier-bound variables directly from model bits, initialize
/// the rest to nil, then resolve each variable-database entry in
/// ascending index order via the counterexample rules (later updates
/// win).
Assignment model_to_assignment(const BoolEnv& model, const BvarDb& db, const AigMan& aig,
                               const GBindings& specs,
                               const std::vector<SymbolId>& theorem_vars,
                               const std::vector<CtrexRule>& rules, const EventDb& defs,
                               int fuel = 25);

/// Renders a variable-database entry as a concrete-leaved term, fixing
/// Bool/Int leaves by the model.
Term render_entry(const SymObj& o, const BoolEnv& model, const AigMan& aig);

struct CtrexVerdict {
  bool real = false;
  std::string reason;  // for false counterexamples
  std::vector<EnvDisagreement> disagreements;
};

/// A candidate is real iff the hypothesis evaluates non-nil and the
/// conclusion evaluates nil under it. Also diagnoses which variable-
/// database entries disagree with the SAT model under the candidate
/// (the impossible-model phenomenon).
CtrexVerdict verify_ctrex(const Assignment& asg, const Term& hyp, const Term& concl,
                          const BvarDb& db, const BoolEnv& model, const AigMan& aig,
                          const EventDb& defs);

}  // namespace termblast
