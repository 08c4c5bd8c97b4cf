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

#include "termblast/bvardb.hpp"

#include <sstream>

namespace termblast {

BvarDb::LookupResult BvarDb::lookup_or_add(AigMan& aig, const SymObj& o) {
  if (!o.is(SymObj::Kind::Apply) && !o.is(SymObj::Kind::Var))
    throw BvarDbError("only Apply and Var objects are assigned Boolean variables");
  auto it = reverse_.find(o);
  if (it != reverse_.end())
    return LookupResult{aig.input(it->second), false, it->second};
  uint32_t idx = next_index();
  if (auto mv = max_boolean_var(o, aig); mv && *mv >= idx)
    throw BvarDbError("ordering violation: new entry mentions variable " +
                      std::to_string(*mv) + " >= " + std::to_string(idx));
  entries_.push_back(o);
  reverse_.emplace(o, idx);
  return LookupResult{aig.input(idx), true, idx};
}

void BvarDb::conjoin_constraint(AigMan& aig, Bfr c) {
  constraints_ = aig.land(constraints_, c);
  ++constraint_count_;
}

bool BvarDb::note_instance(SymbolId rule, const std::vector<uint32_t>& entry_indices) {
  return instances_.emplace(rule, entry_indices).second;
}

std::string BvarDb::dump(const AigMan& aig) const {
  std::ostringstream os;
  os << "bvar-db base " << base_ << ", " << entries_.size() << " entries, "
     << constraint_count_ << " constraints (formula " << aig.to_string(constraints_)
     << ")\n";
  for (size_t i = 0; i < entries_.size(); ++i)
    os << "  " << (base_ + i) << " -> " << sobj_to_string(entries_[i], aig) << "\n";
  return os.str();
}

bool check_env_consistent(const BvarDb& db, const SymEnv& env, const AigMan& aig,
                          const EventDb& defs) {
  for (size_t i = 0; i < db.size(); ++i) {
    Value v = sym_eval(db.entry(i), env, aig, defs);
    if (env.boolean.get(db.base() + static_cast<uint32_t>(i)) != v.truthy()) return false;
  }
  return true;
}

SymEnv extend_env_consistent(const BvarDb& db, SymEnv env, const AigMan& aig,
                             const EventDb& defs) {
  for (size_t i = 0; i < db.size(); ++i) {
    Value v = sym_eval(db.entry(i), env, aig, defs);
    env.boolean.set(db.base() + static_cast<uint32_t>(i), v.truthy());
  }
  return env;
}

std::vector<EnvDisagreement> env_disagreements(const BvarDb& db, const SymEnv& env,
                                               const AigMan& aig, const EventDb& defs) {
  std::vector<EnvDisagreement> out;
  for (size_t i = 0; i < db.size(); ++i) {
    uint32_t idx = db.base() + static_cast<uint32_t>(i);
    bool model = env.boolean.get(idx);
    bool eval = sym_eval(db.entry(i), env, aig, defs).truthy();
    if (model != eval) out.push_back(EnvDisagreement{idx, db.entry(i), model, eval});
  }
  return out;
}

namespace {

// Enumerates assignments of the remaining binding patterns over issued
// entries, extending subst consistently; calls emit for each complete
// tuple. `counter` enforces the per-rule cap.
void enumerate_bindings(const BvarDb& db, const ConstraintRule& rule, size_t binding_pos,
                        size_t pivot_pos, uint32_t pivot_index, size_t snapshot,
                        Substitution subst, std::vector<uint32_t> chosen,
                        uint64_t tuple_cap, uint64_t& counter, bool& truncated,
                        const std::function<void(const Substitution&,
                                                 const std::vector<uint32_t>&)>& emit) {
  if (binding_pos == rule.bindings.size()) {
    if (counter >= tuple_cap) {
      truncated = true;
      return;
    }
    ++counter;
    emit(subst, chosen);
    return;
  }
  if (binding_pos == pivot_pos) {
    chosen.push_back(pivot_index);
    enumerate_bindings(db, rule, binding_pos + 1, pivot_pos, pivot_index, snapshot,
                       std::move(subst), std::move(chosen), tuple_cap, counter, truncated,
                       emit);
    return;
  }
  const Term& pat = rule.bindings[binding_pos].second;
  for (size_t i = 0; i < snapshot && !truncated; ++i) {
    Substitution ext = subst;
    if (!unify(pat, db.entry(i), ext)) continue;
    std::vector<uint32_t> c2 = chosen;
    c2.push_back(db.base() + static_cast<uint32_t>(i));
    enumerate_bindings(db, rule, binding_pos + 1, pivot_pos, pivot_index, snapshot,
                       std::move(ext), std::move(c2), tuple_cap, counter, truncated, emit);
  }
}

}  // namespace

void instantiate_constraints(BvarDb& db, AigMan& aig, const EventDb& events,
                             uint32_t new_index, const ConstraintInterp& interp,
                             uint64_t tuple_cap,
                             const std::function<void(const std::string&)>& warn) {
  // Copy the handle: body interpretation below may grow the entry array.
  const SymObj new_entry = db.entry(new_index - db.base());
  if (!new_entry.is(SymObj::Kind::Apply)) return;  // no pattern matches a bare Var

  // Snapshot so objects added during body interpretation trigger their own
  // instantiation rather than extending this enumeration.
  size_t snapshot = db.size();

  for (const ConstraintRule* rule : events.constraints_for(new_entry.fn())) {
    for (size_t pivot = 0; pivot < rule->bindings.size(); ++pivot) {
      Substitution base_subst;
      if (!unify(rule->bindings[pivot].second, new_entry, base_subst)) continue;
      uint64_t counter = 0;
      bool truncated = false;
      std::vector<std::pair<Substitution, std::vector<uint32_t>>> tuples;
      enumerate_bindings(
          db, *rule, 0, pivot, new_index, snapshot, base_subst, {}, tuple_cap, counter,
          truncated,
          [&](const Substitution& subst, const std::vector<uint32_t>& chosen) {
            tuples.emplace_back(subst, chosen);
          });
      if (truncated && warn)
        warn("constraint rule " + symbol_name(rule->name) + " truncated at " +
             std::to_string(tuple_cap) + " instantiations");
      for (auto& [subst, chosen] : tuples) {
        if (!db.note_instance(rule->name, chosen)) continue;
        Substitution full = subst;
        for (size_t b = 0; b < rule->bindings.size(); ++b)
          full[rule->bindings[b].first] = SymObj::boolean(aig.input(chosen[b]));
        Bfr body = interp(rule->body, full);
        db.conjoin_constraint(aig, body);
      }
    }
  }
}

}  // namespace termblast
