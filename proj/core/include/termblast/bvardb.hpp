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

#include <functional>
#include <set>
#include <unordered_map>

#include "termblast/sobj.hpp"

namespace termblast {

class BvarDbError : public std::runtime_error {
 public:
  explicit BvarDbError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Append-only map from generated Boolean variable indices to the
/// symbolic objects they stand for, plus the accumulated constraint
/// formula. Entry i owns input variable base+i; every shape-specifier
/// bit lies below base. Entry i's object may mention only input
/// variables below base+i (checked on every append).
class BvarDb {
 public:
  explicit BvarDb(uint32_t base = 0) : base_(base) {}

  uint32_t base() const { return base_; }
  size_t size() const { return entries_.size(); }
  uint32_t next_index() const { return base_ + static_cast<uint32_t>(entries_.size()); }
  const SymObj& entry(size_t i) const { return entries_.at(i); }

  struct LookupResult {
    Bfr var;
    bool newly_added;
    uint32_t index;  // absolute input-variable index
  };

  /// Returns the Boolean variable for o, issuing a fresh one on first
  /// sight. o must be an Apply or Var object. Throws BvarDbError if o
  /// mentions a not-yet-issued variable (ordering violation).
  LookupResult lookup_or_add(AigMan& aig, const SymObj& o);

  Bfr constraints() const { return constraints_; }
  size_t constraint_count() const { return constraint_count_; }
  void conjoin_constraint(AigMan& aig, Bfr c);

  /// Instantiation log: true if the tuple was fresh (and records it).
  bool note_instance(SymbolId rule, const std::vector<uint32_t>& entry_indices);

  std::string dump(const AigMan& aig) const;

 private:
  uint32_t base_ = 0;
  std::vector<SymObj> entries_;
  std::unordered_map<SymObj, uint32_t, SymObjHash> reverse_;
  Bfr constraints_ = bfr_true;
  size_t constraint_count_ = 0;
  std::set<std::pair<SymbolId, std::vector<uint32_t>>> instances_;
};

/// Environment consistency (the bridge between SAT models and term
/// semantics): for each entry i, the binding of variable base+i must
/// agree with the truth value of the entry object's evaluation.
bool check_env_consistent(const BvarDb& db, const SymEnv& env, const AigMan& aig,
                          const EventDb& defs);

/// Extends env into a consistent one: for i ascending, sets variable
/// base+i to the truthiness of entry i's evaluation under the environment
/// built so far. env must already fix everything below base (shape bits)
/// and all term variables (both default).
SymEnv extend_env_consistent(const BvarDb& db, SymEnv env, const AigMan& aig,
                             const EventDb& defs);

/// Entry-wise disagreement report between a Boolean model and the
/// evaluation of entries under env (used for false-counterexample
/// diagnostics).
struct EnvDisagreement {
  uint32_t index;
  SymObj entry;
  bool model_value;
  bool eval_value;
};
std::vector<EnvDisagreement> env_disagreements(const BvarDb& db, const SymEnv& env,
                                               const AigMan& aig, const EventDb& defs);

/// Callback used by constraint instantiation: interprets a constraint
/// body under a substitution in an if-test-like context and returns its
/// Boolean function. Provided by the interpreter.
using ConstraintInterp = std::function<Bfr(const Term& body, const Substitution& subst)>;

/// After `new_index` was appended, finds every constraint rule and every
/// way to unify one of its binding patterns with the new entry and the
/// remaining patterns with issued entries; for each fresh combination,
/// interprets the body (binding-vars bound to the matched entries'
/// Boolean variables) and conjoins the result into the constraint
/// formula. Interpretation may recursively add variables and instantiate
/// further constraints. Combinations per rule are capped; truncation is
/// reported through `warn`.
void instantiate_constraints(BvarDb& db, AigMan& aig, const EventDb& events,
                             uint32_t new_index, const ConstraintInterp& interp,
                             uint64_t tuple_cap = 10000,
                             const std::function<void(const std::string&)>& warn = {});

}  // namespace termblast
