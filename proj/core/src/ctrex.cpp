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

#include "termblast/ctrex.hpp"

namespace termblast {

namespace {

// First-order matching of a ctrex pattern against a concrete-leaved term;
// pattern variables bind subterms.
bool match_term(const Term& pattern, const Term& term,
                std::map<SymbolId, Term>& subst) {
  switch (pattern.kind()) {
    case Term::Kind::Var: {
      auto [it, inserted] = subst.emplace(pattern.var_name(), term);
      return inserted || Term::equal(it->second, term);
    }
    case Term::Kind::Quote:
      return term.kind() == Term::Kind::Quote &&
             Value::equal(pattern.quoted(), term.quoted());
    case Term::Kind::App: {
      if (term.kind() != Term::Kind::App || term.fn() != pattern.fn() ||
          term.args().size() != pattern.args().size())
        return false;
      for (size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_term(pattern.args()[i], term.args()[i], subst)) return false;
      return true;
    }
    case Term::Kind::LambdaApp:
      return false;
  }
  return false;
}

std::string eq_string(const PendingEq& eq) {
  return print_term(eq.term) + " = " + print_value(eq.value);
}

}  // namespace

void apply_ctrex_rules(const PendingEq& eq, Assignment& asg,
                       const std::vector<CtrexRule>& rules, const EventDb& defs,
                       int fuel) {
  if (fuel <= 0) {
    asg.unresolved.push_back(eq_string(eq) + "  (fuel exhausted; possible rule loop)");
    return;
  }
  if (eq.term.kind() == Term::Kind::Var) {
    asg.vars[eq.term.var_name()] = eq.value;
    asg.provenance.push_back({eq_string(eq), symbol_name(eq.term.var_name()) + " := " +
                                                 print_value(eq.value)});
    return;
  }
  for (const CtrexRule& rule : rules) {
    std::map<SymbolId, Term> subst;
    if (!match_term(rule.lhs_pattern, eq.term, subst)) continue;
    // Evaluate each matched subterm and the update under the current
    // variable assignment, guard-free.
    ValueBindings env;
    try {
      for (const auto& [v, sub] : subst) env[v] = eval_term(sub, asg.vars, defs);
      env[rule.value_var] = eq.value;
      Value updated = eval_term(rule.update, env, defs);
      asg.provenance.push_back(
          {eq_string(eq), print_term(subst.at(rule.target)) + " <- " +
                              print_value(updated)});
      apply_ctrex_rules(PendingEq{subst.at(rule.target), updated}, asg, rules, defs,
                        fuel - 1);
    } catch (const EvalError& e) {
      asg.unresolved.push_back(eq_string(eq) + "  (update evaluation failed: " +
                               e.what() + ")");
    }
    return;  // first matching rule wins
  }
  asg.unresolved.push_back(eq_string(eq) + "  (no applicable rule)");
}

Term render_entry(const SymObj& o, const BoolEnv& model, const AigMan& aig) {
  switch (o.kind()) {
    case SymObj::Kind::Concrete:
      return Term::quote(o.value());
    case SymObj::Kind::Bool:
      return Term::quote(Value::boolean(aig.eval(o.bfr(), model)));
    case SymObj::Kind::Int: {
      std::vector<bool> bs;
      for (Bfr b : o.bits()) bs.push_back(aig.eval(b, model));
      return Term::quote(Value::integer(decode_int_bits(bs)));
    }
    case SymObj::Kind::Cons:
      return Term::app(syms().CONS, {render_entry(o.car(), model, aig),
                                     render_entry(o.cdr(), model, aig)});
    case SymObj::Kind::Ite: {
      const SymObj& t = o.test();
      if (t.is(SymObj::Kind::Bool))
        return render_entry(aig.eval(t.bfr(), model) ? o.then_branch() : o.else_branch(),
                            model, aig);
      if (general_concretep(t))
        return render_entry(
            general_concrete_obj(t).truthy() ? o.then_branch() : o.else_branch(), model,
            aig);
      return Term::app(syms().IF, {render_entry(t, model, aig),
                                   render_entry(o.then_branch(), model, aig),
                                   render_entry(o.else_branch(), model, aig)});
    }
    case SymObj::Kind::Apply: {
      std::vector<Term> args;
      for (const SymObj& a : o.args()) args.push_back(render_entry(a, model, aig));
      return Term::app(o.fn(), std::move(args));
    }
    case SymObj::Kind::Var:
      return Term::var(o.var_name());
  }
  throw std::logic_error("malformed symbolic object");
}

Assignment model_to_assignment(const BoolEnv& model, const BvarDb& db, const AigMan& aig,
                               const GBindings& specs,
                               const std::vector<SymbolId>& theorem_vars,
                               const std::vector<CtrexRule>& rules, const EventDb& defs,
                               int fuel) {
  Assignment asg;
  for (SymbolId v : theorem_vars) asg.vars[v] = Value::nil();
  // Shape-specifier-bound variables decode directly from the model bits.
  for (const auto& [var, spec] : specs) {
    if (auto v = spec_decode(spec, model)) {
      asg.vars[var] = *v;
      asg.provenance.push_back(
          {symbol_name(var) + " from shape spec", symbol_name(var) + " := " +
                                                      print_value(*v)});
    }
  }
  for (size_t i = 0; i < db.size(); ++i) {
    uint32_t idx = db.base() + static_cast<uint32_t>(i);
    PendingEq eq{render_entry(db.entry(i), model, aig),
                 Value::boolean(model.get(idx))};
    apply_ctrex_rules(eq, asg, rules, defs, fuel);
  }
  return asg;
}

CtrexVerdict verify_ctrex(const Assignment& asg, const Term& hyp, const Term& concl,
                          const BvarDb& db, const BoolEnv& model, const AigMan& aig,
                          const EventDb& defs) {
  CtrexVerdict out;
  // Diagnose model consistency first: rebuild the environment from the
  // candidate (keeping shape-specifier bits from the model) and compare
  // each entry's evaluation against its model value.
  SymEnv env;
  env.vars = asg.vars;
  for (const auto& [var, val] : model.entries()) {
    if (var < db.base()) env.boolean.set(var, val);
  }
  for (size_t i = 0; i < db.size(); ++i)
    env.boolean.set(db.base() + static_cast<uint32_t>(i),
                    model.get(db.base() + static_cast<uint32_t>(i)));
  try {
    out.disagreements = env_disagreements(db, env, aig, defs);
  } catch (const EvalError& e) {
    out.reason = std::string("entry evaluation failed: ") + e.what();
  }

  try {
    Value h = eval_term(hyp, asg.vars, defs);
    if (!h.truthy()) {
      out.real = false;
      out.reason = "candidate does not satisfy the hypothesis";
      return out;
    }
    Value c = eval_term(concl, asg.vars, defs);
    if (!c.truthy()) {
      out.real = true;
      return out;
    }
    out.real = false;
    out.reason = "conclusion evaluates true on the candidate";
    return out;
  } catch (const EvalError& e) {
    out.real = false;
    out.reason = std::string("evaluation failed: ") + e.what();
    return out;
  }
}

}  // namespace termblast
