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

#include "termblast/shapespec.hpp"

#include <set>
#include <sstream>

namespace termblast {

struct ShapeSpec::Node {
  Kind kind;
  Value value;
  uint32_t a = 0, b = 0, c = 0;  // GBoolean index / GInt start, by, n
  std::vector<ShapeSpec> kids;
  SymbolId sym = 0;
  Inverse inverse;
};

ShapeSpec ShapeSpec::concrete(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Concrete;
  n->value = std::move(v);
  return ShapeSpec(std::move(n));
}

ShapeSpec ShapeSpec::g_boolean(uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::GBoolean;
  n->a = index;
  return ShapeSpec(std::move(n));
}

ShapeSpec ShapeSpec::g_int(uint32_t start, uint32_t by, uint32_t nbits) {
  if (nbits < 1 || by < 1) throw ShapeSpecError("g-int needs n >= 1 and by >= 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::GInt;
  n->a = start;
  n->b = by;
  n->c = nbits;
  return ShapeSpec(std::move(n));
}

ShapeSpec ShapeSpec::s_cons(ShapeSpec car, ShapeSpec cdr) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SCons;
  n->kids = {std::move(car), std::move(cdr)};
  return ShapeSpec(std::move(n));
}

ShapeSpec ShapeSpec::g_var(SymbolId name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::GVar;
  n->sym = name;
  return ShapeSpec(std::move(n));
}

ShapeSpec ShapeSpec::g_call(SymbolId fn, std::vector<ShapeSpec> args, Inverse inverse) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::GCall;
  n->sym = fn;
  n->kids = std::move(args);
  n->inverse = std::move(inverse);
  return ShapeSpec(std::move(n));
}

ShapeSpec::Kind ShapeSpec::kind() const { return n_->kind; }
const Value& ShapeSpec::value() const { return n_->value; }
uint32_t ShapeSpec::index() const { return n_->a; }
uint32_t ShapeSpec::start() const { return n_->a; }
uint32_t ShapeSpec::by() const { return n_->b; }
uint32_t ShapeSpec::n() const { return n_->c; }
const ShapeSpec& ShapeSpec::car() const { return n_->kids[0]; }
const ShapeSpec& ShapeSpec::cdr() const { return n_->kids[1]; }
SymbolId ShapeSpec::var_name() const { return n_->sym; }
SymbolId ShapeSpec::fn() const { return n_->sym; }
const std::vector<ShapeSpec>& ShapeSpec::args() const { return n_->kids; }
const ShapeSpec::Inverse& ShapeSpec::inverse() const { return n_->inverse; }

bool ShapeSpec::contains_gcall() const {
  if (kind() == Kind::GCall) return true;
  for (const ShapeSpec& k : n_->kids)
    if (k.contains_gcall()) return true;
  return false;
}

std::vector<uint32_t> ShapeSpec::indices() const {
  std::vector<uint32_t> out;
  switch (kind()) {
    case Kind::GBoolean:
      out.push_back(index());
      break;
    case Kind::GInt:
      for (uint32_t i = 0; i < n(); ++i) out.push_back(start() + i * by());
      break;
    default:
      for (const ShapeSpec& k : n_->kids) {
        auto sub = k.indices();
        out.insert(out.end(), sub.begin(), sub.end());
      }
  }
  return out;
}

namespace {

std::vector<Value> elems_of(const Value& v, const char* what) {
  std::vector<Value> out;
  const Value* x = &v;
  while (x->is_cons()) {
    out.push_back(x->car());
    x = &x->cdr();
  }
  if (!x->is_nil()) throw ShapeSpecError(std::string("improper list in ") + what);
  return out;
}

uint32_t spec_nat(const Value& v, const char* what) {
  if (!v.is_integer() || mpz_sgn(v.num().get_mpz_t()) < 0 || !v.num().fits_ulong_p())
    throw ShapeSpecError(std::string(what) + " must be a natural number: " + print_value(v));
  return static_cast<uint32_t>(v.num().get_ui());
}

Value unquote(const Value& v) {
  const Syms& S = syms();
  if (v.is_cons() && v.car().is_symbol() && v.car().sym() == S.QUOTE &&
      v.cdr().is_cons() && v.cdr().cdr().is_nil())
    return v.cdr().car();
  return v;
}

ShapeSpec::Inverse parse_inverse(const Value& form) {
  const Syms& S = syms();
  Value v = unquote(form);
  ShapeSpec::Inverse inv;
  if (v.is_symbol()) {
    inv.fn_symbol = v.sym();
    return inv;
  }
  std::vector<Value> e = elems_of(v, "g-call inverse");
  if (e.size() == 3 && e[0].is_symbol() && e[0].sym() == S.LAMBDA) {
    std::vector<Value> formals = elems_of(e[1], "inverse lambda formals");
    if (formals.size() != 1 || !formals[0].is_symbol())
      throw ShapeSpecError("g-call inverse lambda must take one argument");
    inv.formals = {formals[0].sym()};
    inv.lambda = parse_term(e[2]);
    return inv;
  }
  throw ShapeSpecError("g-call inverse must be a function symbol or unary lambda");
}

ShapeSpec parse_spec_expr(const Value& form) {
  const Syms& S = syms();
  switch (form.kind()) {
    case Value::Kind::Int:
    case Value::Kind::Str:
      return ShapeSpec::concrete(form);
    case Value::Kind::Sym:
      if (form.is_t() || form.is_nil() || form.is_keyword())
        return ShapeSpec::concrete(form);
      throw ShapeSpecError("bare symbol in shape spec (quote it or use g-var): " +
                           print_value(form));
    case Value::Kind::Cons:
      break;
  }
  std::vector<Value> e = elems_of(form, "shape spec");
  if (e.empty() || !e[0].is_symbol())
    throw ShapeSpecError("malformed shape spec: " + print_value(form));
  SymbolId head = e[0].sym();
  if (head == S.QUOTE) {
    if (e.size() != 2) throw ShapeSpecError("quote takes one argument");
    return ShapeSpec::concrete(e[1]);
  }
  if (head == S.G_INT) {
    if (e.size() != 4) throw ShapeSpecError("g-int takes start, by, n");
    return ShapeSpec::g_int(spec_nat(unquote(e[1]), "g-int start"),
                            spec_nat(unquote(e[2]), "g-int by"),
                            spec_nat(unquote(e[3]), "g-int n"));
  }
  if (head == S.G_BOOLEAN_HEAD) {
    if (e.size() != 2) throw ShapeSpecError("g-boolean takes an index");
    return ShapeSpec::g_boolean(spec_nat(unquote(e[1]), "g-boolean index"));
  }
  if (head == S.G_VAR_HEAD) {
    if (e.size() != 2) throw ShapeSpecError("g-var takes a name");
    Value name = unquote(e[1]);
    if (!name.is_symbol()) throw ShapeSpecError("g-var name must be a symbol");
    return ShapeSpec::g_var(name.sym());
  }
  if (head == S.G_CALL_HEAD) {
    if (e.size() != 4) throw ShapeSpecError("g-call takes fn, args, inverse");
    Value fnv = unquote(e[1]);
    if (!fnv.is_symbol()) throw ShapeSpecError("g-call function must be a symbol");
    Value argsform = e[2];
    std::vector<ShapeSpec> args;
    if (argsform.is_cons() && argsform.car().is_symbol() &&
        argsform.car().sym() == S.LIST) {
      std::vector<Value> items = elems_of(argsform, "g-call args");
      for (size_t i = 1; i < items.size(); ++i) args.push_back(parse_spec_expr(items[i]));
    } else if (argsform.is_cons() && argsform.car().is_symbol() &&
               argsform.car().sym() == S.QUOTE) {
      for (const Value& item : elems_of(unquote(argsform), "g-call args"))
        args.push_back(ShapeSpec::concrete(item));
    } else {
      throw ShapeSpecError("g-call arguments must be (list ...) or a quoted list");
    }
    return ShapeSpec::g_call(fnv.sym(), std::move(args), parse_inverse(e[3]));
  }
  if (head == S.CONS) {
    if (e.size() != 3) throw ShapeSpecError("cons takes two arguments");
    return ShapeSpec::s_cons(parse_spec_expr(e[1]), parse_spec_expr(e[2]));
  }
  if (head == S.LIST) {
    ShapeSpec out = ShapeSpec::concrete(Value::nil());
    for (size_t i = e.size(); i-- > 1;)
      out = ShapeSpec::s_cons(parse_spec_expr(e[i]), std::move(out));
    return out;
  }
  throw ShapeSpecError("unknown shape spec constructor: " + symbol_name(head));
}

}  // namespace

GBindings parse_g_bindings(const Value& form) {
  GBindings out;
  if (form.is_nil()) return out;
  Value v = unquote(form);
  if (v.is_nil()) return out;
  std::set<uint32_t> seen;
  std::set<SymbolId> vars;
  for (const Value& pair : elems_of(v, ":g-bindings")) {
    std::vector<Value> pv = elems_of(pair, ":g-bindings entry");
    if (pv.size() != 2 || !pv[0].is_symbol())
      throw ShapeSpecError("g-bindings entry must be (var spec): " + print_value(pair));
    if (!vars.insert(pv[0].sym()).second)
      throw ShapeSpecError("duplicate g-bindings variable " + symbol_name(pv[0].sym()));
    ShapeSpec spec = parse_spec_expr(pv[1]);
    for (uint32_t i : spec.indices()) {
      if (!seen.insert(i).second)
        throw ShapeSpecError("Boolean index " + std::to_string(i) +
                             " used twice in :g-bindings");
    }
    out.emplace_back(pv[0].sym(), std::move(spec));
  }
  return out;
}

SymObj spec_to_sobj(const ShapeSpec& s, AigMan& aig) {
  switch (s.kind()) {
    case ShapeSpec::Kind::Concrete:
      return SymObj::concrete(s.value());
    case ShapeSpec::Kind::GBoolean:
      return SymObj::boolean(aig.input(s.index()));
    case ShapeSpec::Kind::GInt: {
      std::vector<Bfr> bits;
      for (uint32_t i = 0; i < s.n(); ++i) bits.push_back(aig.input(s.start() + i * s.by()));
      return SymObj::integer(std::move(bits));
    }
    case ShapeSpec::Kind::SCons:
      return SymObj::cons(spec_to_sobj(s.car(), aig), spec_to_sobj(s.cdr(), aig));
    case ShapeSpec::Kind::GVar:
      return SymObj::var(s.var_name());
    case ShapeSpec::Kind::GCall: {
      std::vector<SymObj> args;
      for (const ShapeSpec& a : s.args()) args.push_back(spec_to_sobj(a, aig));
      return SymObj::apply(s.fn(), std::move(args));
    }
  }
  throw ShapeSpecError("malformed shape spec");
}

bool obj_in_range(const ShapeSpec& s, const Value& target) {
  switch (s.kind()) {
    case ShapeSpec::Kind::Concrete:
      return Value::equal(s.value(), target);
    case ShapeSpec::Kind::GBoolean:
      return target.is_boolean();
    case ShapeSpec::Kind::GInt: {
      if (!target.is_integer()) return false;
      mpz_class lo = 1, hi = 1;
      mpz_mul_2exp(lo.get_mpz_t(), lo.get_mpz_t(), s.n() - 1);
      hi = lo - 1;
      lo = -lo;
      return target.num() >= lo && target.num() <= hi;
    }
    case ShapeSpec::Kind::SCons:
      return target.is_cons() && obj_in_range(s.car(), target.car()) &&
             obj_in_range(s.cdr(), target.cdr());
    case ShapeSpec::Kind::GVar:
      return true;
    case ShapeSpec::Kind::GCall:
      throw ShapeSpecError("obj_in_range does not apply to g-call specs");
  }
  return false;
}

Value render_spec(const ShapeSpec& s) {
  const Syms& S = syms();
  switch (s.kind()) {
    case ShapeSpec::Kind::Concrete:
      return Value::cons(Value::symbol(S.K_G_CONCRETE), s.value());
    case ShapeSpec::Kind::GBoolean:
      return Value::cons(Value::symbol(S.K_G_BOOLEAN), Value::integer((long)s.index()));
    case ShapeSpec::Kind::GInt:
      return list_of({Value::symbol(S.K_G_INTEGER), Value::integer((long)s.start()),
                      Value::integer((long)s.by()), Value::integer((long)s.n())});
    case ShapeSpec::Kind::SCons:
      return list_of({Value::symbol(S.K_G_CONS), render_spec(s.car()),
                      render_spec(s.cdr())});
    case ShapeSpec::Kind::GVar:
      return Value::cons(Value::symbol(S.K_G_VAR), Value::symbol(s.var_name()));
    case ShapeSpec::Kind::GCall: {
      std::vector<Value> args;
      for (const ShapeSpec& a : s.args()) args.push_back(render_spec(a));
      Value inv = s.inverse().is_lambda()
                      ? list_of({Value::symbol(S.LAMBDA),
                                 list_of({Value::symbol(s.inverse().formals[0])}),
                                 term_to_value(s.inverse().lambda)})
                      : Value::symbol(s.inverse().fn_symbol);
      return list_of({Value::symbol(S.K_G_CALL), Value::symbol(s.fn()), list_of(args),
                      inv});
    }
  }
  return Value::nil();
}

ShapeSpec parse_rendered_spec(const Value& v) {
  const Syms& S = syms();
  if (!v.is_cons() || !v.car().is_symbol())
    throw ShapeSpecError("malformed rendered spec: " + print_value(v));
  SymbolId tag = v.car().sym();
  if (tag == S.K_G_CONCRETE) return ShapeSpec::concrete(v.cdr());
  if (tag == S.K_G_BOOLEAN) return ShapeSpec::g_boolean(spec_nat(v.cdr(), "index"));
  if (tag == S.K_G_INTEGER) {
    std::vector<Value> e = elems_of(v, "rendered g-int");
    if (e.size() != 4) throw ShapeSpecError("malformed rendered g-int");
    return ShapeSpec::g_int(spec_nat(e[1], "start"), spec_nat(e[2], "by"),
                            spec_nat(e[3], "n"));
  }
  if (tag == S.K_G_CONS) {
    std::vector<Value> e = elems_of(v, "rendered cons");
    if (e.size() != 3) throw ShapeSpecError("malformed rendered cons spec");
    return ShapeSpec::s_cons(parse_rendered_spec(e[1]), parse_rendered_spec(e[2]));
  }
  if (tag == S.K_G_VAR) {
    if (!v.cdr().is_symbol()) throw ShapeSpecError("malformed rendered g-var");
    return ShapeSpec::g_var(v.cdr().sym());
  }
  if (tag == S.K_G_CALL) {
    std::vector<Value> e = elems_of(v, "rendered g-call");
    if (e.size() != 4 || !e[1].is_symbol())
      throw ShapeSpecError("malformed rendered g-call");
    std::vector<ShapeSpec> args;
    for (const Value& a : elems_of(e[2], "rendered g-call args"))
      args.push_back(parse_rendered_spec(a));
    return ShapeSpec::g_call(e[1].sym(), std::move(args), parse_inverse(e[3]));
  }
  throw ShapeSpecError("unknown rendered spec tag: " + symbol_name(tag));
}

namespace {

// (inv target) as a term.
Term apply_inverse(const ShapeSpec::Inverse& inv, const Term& target) {
  if (inv.is_lambda())
    return make_closed_lambda_app(inv.formals, inv.lambda, {target});
  return Term::app(inv.fn_symbol, {target});
}

Term conj2(const Term& a, const Term& b) {
  const Syms& S = syms();
  return Term::app(S.IF, {a, b, Term::quote(Value::nil())});
}

Term oblig_rec(const ShapeSpec& s, const Term& target, int depth) {
  const Syms& S = syms();
  if (s.kind() != ShapeSpec::Kind::GCall)
    return Term::app(S.SHAPE_SPEC_OBJ_IN_RANGE,
                     {Term::quote(render_spec(s)), target});

  SymbolId invargs = intern("INV-ARGS-" + std::to_string(depth));
  Term invargs_var = Term::var(invargs);
  std::vector<Term> call_args;
  for (size_t i = 0; i < s.args().size(); ++i)
    call_args.push_back(
        Term::app(S.NTH, {Term::quote(Value::integer((long)i)), invargs_var}));
  // Conjunction: the call rebuilt from the inverse equals the target, and
  // each argument spec covers the corresponding inverse component.
  Term eq = Term::app(S.EQUAL, {Term::app(s.fn(), call_args), target});
  std::vector<Term> conj{eq};
  for (size_t i = 0; i < s.args().size(); ++i) {
    Term nth_i = Term::app(S.NTH, {Term::quote(Value::integer((long)i)), invargs_var});
    conj.push_back(oblig_rec(s.args()[i], nth_i, depth + 1));
  }
  Term body = conj.back();
  for (size_t i = conj.size() - 1; i-- > 0;) body = conj2(conj[i], body);
  return make_closed_lambda_app({invargs}, body, {apply_inverse(s.inverse(), target)});
}

}  // namespace

Term oblig_term(const ShapeSpec& s, const Term& target) { return oblig_rec(s, target, 0); }

bool spec_witness(const ShapeSpec& s, const Value& target, BoolEnv& bits,
                  ValueBindings& vars) {
  switch (s.kind()) {
    case ShapeSpec::Kind::Concrete:
      return Value::equal(s.value(), target);
    case ShapeSpec::Kind::GBoolean:
      if (!target.is_boolean()) return false;
      bits.set(s.index(), target.is_t());
      return true;
    case ShapeSpec::Kind::GInt: {
      if (!obj_in_range(s, target)) return false;
      for (uint32_t i = 0; i < s.n(); ++i)
        bits.set(s.start() + i * s.by(), mpz_tstbit(target.num().get_mpz_t(), i));
      return true;
    }
    case ShapeSpec::Kind::SCons:
      return target.is_cons() && spec_witness(s.car(), target.car(), bits, vars) &&
             spec_witness(s.cdr(), target.cdr(), bits, vars);
    case ShapeSpec::Kind::GVar:
      vars[s.var_name()] = target;
      return true;
    case ShapeSpec::Kind::GCall:
      return false;
  }
  return false;
}

std::optional<Value> spec_decode(const ShapeSpec& s, const BoolEnv& model) {
  switch (s.kind()) {
    case ShapeSpec::Kind::Concrete:
      return s.value();
    case ShapeSpec::Kind::GBoolean:
      return Value::boolean(model.get(s.index()));
    case ShapeSpec::Kind::GInt: {
      std::vector<bool> bs;
      for (uint32_t i = 0; i < s.n(); ++i) bs.push_back(model.get(s.start() + i * s.by()));
      return Value::integer(decode_int_bits(bs));
    }
    case ShapeSpec::Kind::SCons: {
      auto a = spec_decode(s.car(), model);
      auto d = spec_decode(s.cdr(), model);
      if (!a || !d) return std::nullopt;
      return Value::cons(*a, *d);
    }
    case ShapeSpec::Kind::GVar:
    case ShapeSpec::Kind::GCall:
      return std::nullopt;
  }
  return std::nullopt;
}

ObligSampleReport check_oblig_on(const ShapeSpec& s, SymbolId var,
                                 const std::vector<ValueBindings>& samples,
                                 const EventDb& defs) {
  ObligSampleReport report;
  if (samples.empty()) {
    report.vacuous = true;
    return report;
  }
  Term oblig = oblig_term(s, Term::var(var));
  for (const ValueBindings& sample : samples) {
    ++report.total;
    try {
      Value r = eval_term(oblig, sample, defs);
      if (r.truthy()) {
        ++report.passed;
      } else {
        auto it = sample.find(var);
        report.failures.push_back(
            "coverage gap at " + symbol_name(var) + " = " +
            (it == sample.end() ? std::string("NIL") : print_value(it->second)));
      }
    } catch (const EvalError& e) {
      report.failures.push_back(std::string("evaluation error: ") + e.what());
    }
  }
  return report;
}

void register_shapespec_natives(EventDb& db) {
  const Syms& S = syms();
  db.register_native(S.SHAPE_SPEC_OBJ_IN_RANGE, 2,
                     [](const std::vector<Value>& args, EvalCtx&) {
                       ShapeSpec spec = parse_rendered_spec(args[0]);
                       return Value::boolean(obj_in_range(spec, args[1]));
                     });
}

}  // namespace termblast
