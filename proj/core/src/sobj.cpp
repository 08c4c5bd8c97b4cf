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

#include "termblast/sobj.hpp"

#include <sstream>

namespace termblast {

struct SymObj::Node {
  Kind kind;
  Value value;
  Bfr b;
  std::vector<Bfr> bits;
  std::vector<SymObj> kids;
  SymbolId sym = 0;
  size_t hash = 0;
};

namespace {

size_t mix(size_t a, size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace

SymObj SymObj::concrete(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Concrete;
  n->hash = mix(1, v.hash());
  n->value = std::move(v);
  return SymObj(std::move(n));
}

SymObj SymObj::boolean(Bfr b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bool;
  n->b = b;
  n->hash = mix(2, b.lit);
  return SymObj(std::move(n));
}

SymObj SymObj::integer(std::vector<Bfr> bits) {
  if (bits.empty()) throw std::invalid_argument("symbolic integer needs at least one bit");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Int;
  size_t h = 3;
  for (Bfr b : bits) h = mix(h, b.lit);
  n->hash = h;
  n->bits = std::move(bits);
  return SymObj(std::move(n));
}

SymObj SymObj::cons(SymObj car, SymObj cdr) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cons;
  n->hash = mix(4, mix(car.hash(), cdr.hash()));
  n->kids = {std::move(car), std::move(cdr)};
  return SymObj(std::move(n));
}

SymObj SymObj::ite(SymObj test, SymObj then, SymObj els) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ite;
  n->hash = mix(5, mix(test.hash(), mix(then.hash(), els.hash())));
  n->kids = {std::move(test), std::move(then), std::move(els)};
  return SymObj(std::move(n));
}

SymObj SymObj::apply(SymbolId fn, std::vector<SymObj> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Apply;
  n->sym = fn;
  size_t h = mix(6, fn);
  for (const SymObj& a : args) h = mix(h, a.hash());
  n->hash = h;
  n->kids = std::move(args);
  return SymObj(std::move(n));
}

SymObj SymObj::var(SymbolId name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->sym = name;
  n->hash = mix(7, name);
  return SymObj(std::move(n));
}

SymObj::Kind SymObj::kind() const { return n_->kind; }
const Value& SymObj::value() const { return n_->value; }
Bfr SymObj::bfr() const { return n_->b; }
const std::vector<Bfr>& SymObj::bits() const { return n_->bits; }
const SymObj& SymObj::car() const { return n_->kids[0]; }
const SymObj& SymObj::cdr() const { return n_->kids[1]; }
const SymObj& SymObj::test() const { return n_->kids[0]; }
const SymObj& SymObj::then_branch() const { return n_->kids[1]; }
const SymObj& SymObj::else_branch() const { return n_->kids[2]; }
SymbolId SymObj::fn() const { return n_->sym; }
const std::vector<SymObj>& SymObj::args() const { return n_->kids; }
SymbolId SymObj::var_name() const { return n_->sym; }

size_t SymObj::hash() const { return n_->hash; }

bool SymObj::equal(const SymObj& a, const SymObj& b) {
  if (a.n_ == b.n_) return true;
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  if (a.n_->hash != b.n_->hash || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Concrete:
      return Value::equal(a.value(), b.value());
    case Kind::Bool:
      return a.bfr() == b.bfr();
    case Kind::Int:
      return a.bits() == b.bits();
    case Kind::Var:
      return a.var_name() == b.var_name();
    case Kind::Apply:
      if (a.fn() != b.fn()) return false;
      [[fallthrough]];
    case Kind::Cons:
    case Kind::Ite: {
      if (a.n_->kids.size() != b.n_->kids.size()) return false;
      for (size_t i = 0; i < a.n_->kids.size(); ++i)
        if (!equal(a.n_->kids[i], b.n_->kids[i])) return false;
      return true;
    }
  }
  return false;
}

std::vector<Bfr> encode_const_int(const mpz_class& n) {
  size_t magnitude_bits;
  if (mpz_sgn(n.get_mpz_t()) >= 0) {
    magnitude_bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (n == 0) magnitude_bits = 0;
  } else {
    mpz_class c = -n - 1;  // ~n
    magnitude_bits = (c == 0) ? 0 : mpz_sizeinbase(c.get_mpz_t(), 2);
  }
  size_t width = magnitude_bits + 1;
  std::vector<Bfr> bits(width);
  for (size_t i = 0; i < width; ++i)
    bits[i] = mpz_tstbit(n.get_mpz_t(), i) ? bfr_true : bfr_false;
  return bits;
}

mpz_class decode_int_bits(const std::vector<bool>& bits) {
  mpz_class out = 0;
  if (bits.empty()) return out;
  for (size_t i = 0; i + 1 < bits.size(); ++i)
    if (bits[i]) mpz_setbit(out.get_mpz_t(), i);
  if (bits.back()) {
    mpz_class sign = 1;
    mpz_mul_2exp(sign.get_mpz_t(), sign.get_mpz_t(), bits.size() - 1);
    out -= sign;
  }
  return out;
}

Value sym_eval(const SymObj& o, const SymEnv& env, const AigMan& aig, EvalCtx& ctx) {
  switch (o.kind()) {
    case SymObj::Kind::Concrete:
      return o.value();
    case SymObj::Kind::Bool:
      return Value::boolean(aig.eval(o.bfr(), env.boolean));
    case SymObj::Kind::Int: {
      std::vector<bool> bs;
      bs.reserve(o.bits().size());
      for (Bfr b : o.bits()) bs.push_back(aig.eval(b, env.boolean));
      return Value::integer(decode_int_bits(bs));
    }
    case SymObj::Kind::Cons:
      return Value::cons(sym_eval(o.car(), env, aig, ctx),
                         sym_eval(o.cdr(), env, aig, ctx));
    case SymObj::Kind::Ite: {
      Value t = sym_eval(o.test(), env, aig, ctx);
      return sym_eval(t.truthy() ? o.then_branch() : o.else_branch(), env, aig, ctx);
    }
    case SymObj::Kind::Apply: {
      std::vector<Value> vals;
      vals.reserve(o.args().size());
      for (const SymObj& a : o.args()) vals.push_back(sym_eval(a, env, aig, ctx));
      return eval_apply(o.fn(), vals, ctx);
    }
    case SymObj::Kind::Var:
      return env.var_value(o.var_name());
  }
  throw EvalError("malformed symbolic object");
}

Value sym_eval(const SymObj& o, const SymEnv& env, const AigMan& aig, const EventDb& db) {
  EvalCtx ctx(db);
  return sym_eval(o, env, aig, ctx);
}

bool general_concretep(const SymObj& o) {
  switch (o.kind()) {
    case SymObj::Kind::Concrete:
      return true;
    case SymObj::Kind::Bool:
      return o.bfr().is_const();
    case SymObj::Kind::Int: {
      for (Bfr b : o.bits())
        if (!b.is_const()) return false;
      return true;
    }
    case SymObj::Kind::Cons:
      return general_concretep(o.car()) && general_concretep(o.cdr());
    case SymObj::Kind::Ite:
    case SymObj::Kind::Apply:
    case SymObj::Kind::Var:
      return false;
  }
  return false;
}

Value general_concrete_obj(const SymObj& o) {
  switch (o.kind()) {
    case SymObj::Kind::Concrete:
      return o.value();
    case SymObj::Kind::Bool:
      return Value::boolean(o.bfr().is_true());
    case SymObj::Kind::Int: {
      std::vector<bool> bs;
      for (Bfr b : o.bits()) bs.push_back(b.is_true());
      return Value::integer(decode_int_bits(bs));
    }
    case SymObj::Kind::Cons:
      return Value::cons(general_concrete_obj(o.car()), general_concrete_obj(o.cdr()));
    default:
      throw std::logic_error("general_concrete_obj on a non-concrete object");
  }
}

bool unify(const Term& pattern, const SymObj& obj, Substitution& subst) {
  const Syms& S = syms();
  switch (pattern.kind()) {
    case Term::Kind::Var: {
      auto [it, inserted] = subst.emplace(pattern.var_name(), obj);
      return inserted || SymObj::equal(it->second, obj);
    }
    case Term::Kind::Quote:
      return general_concretep(obj) &&
             Value::equal(general_concrete_obj(obj), pattern.quoted());
    case Term::Kind::LambdaApp:
      return false;  // patterns contain no lambdas
    case Term::Kind::App:
      break;
  }
  SymbolId fn = pattern.fn();
  const auto& pargs = pattern.args();
  if (fn == S.CONS && pargs.size() == 2) {
    if (obj.is(SymObj::Kind::Cons))
      return unify(pargs[0], obj.car(), subst) && unify(pargs[1], obj.cdr(), subst);
    if (obj.is(SymObj::Kind::Concrete) && obj.value().is_cons())
      return unify(pargs[0], SymObj::concrete(obj.value().car()), subst) &&
             unify(pargs[1], SymObj::concrete(obj.value().cdr()), subst);
    // fall through to Apply matching below
  }
  if (fn == S.IF && pargs.size() == 3 && obj.is(SymObj::Kind::Ite)) {
    return unify(pargs[0], obj.test(), subst) &&
           unify(pargs[1], obj.then_branch(), subst) &&
           unify(pargs[2], obj.else_branch(), subst);
  }
  if (obj.is(SymObj::Kind::Apply) && obj.fn() == fn && obj.args().size() == pargs.size()) {
    for (size_t i = 0; i < pargs.size(); ++i)
      if (!unify(pargs[i], obj.args()[i], subst)) return false;
    return true;
  }
  return false;
}

BoundTerm instantiate(const Term& t, Substitution subst) {
  for (SymbolId v : free_vars(t)) {
    if (!subst.count(v))
      throw std::logic_error("instantiate: unbound rule variable " + symbol_name(v));
  }
  return BoundTerm{t, std::move(subst)};
}

Value reflect(const SymObj& o) {
  const Syms& S = syms();
  if (general_concretep(o))
    return Value::cons(Value::symbol(S.K_CONCRETE), general_concrete_obj(o));
  switch (o.kind()) {
    case SymObj::Kind::Bool:
      return Value::cons(Value::symbol(S.K_G_BOOLEAN), Value::nil());
    case SymObj::Kind::Int:
      return Value::cons(Value::symbol(S.K_G_INTEGER),
                         Value::integer(static_cast<long>(o.bits().size())));
    case SymObj::Kind::Cons:
      return list_of({Value::symbol(S.K_G_CONS), reflect(o.car()), reflect(o.cdr())});
    case SymObj::Kind::Ite:
      return list_of({Value::symbol(S.K_G_ITE), reflect(o.test()),
                      reflect(o.then_branch()), reflect(o.else_branch())});
    case SymObj::Kind::Apply: {
      Value args = Value::nil();
      for (size_t i = o.args().size(); i-- > 0;)
        args = Value::cons(reflect(o.args()[i]), args);
      return Value::cons(Value::symbol(S.K_G_APPLY),
                         Value::cons(Value::symbol(o.fn()), args));
    }
    case SymObj::Kind::Var:
      return Value::cons(Value::symbol(S.K_G_VAR), Value::symbol(o.var_name()));
    case SymObj::Kind::Concrete:
      break;  // covered by general_concretep above
  }
  return Value::nil();
}

std::optional<uint32_t> max_boolean_var(const SymObj& o, const AigMan& aig) {
  std::optional<uint32_t> out;
  auto consider = [&](std::optional<uint32_t> v) {
    if (v && (!out || *v > *out)) out = v;
  };
  switch (o.kind()) {
    case SymObj::Kind::Concrete:
    case SymObj::Kind::Var:
      return out;
    case SymObj::Kind::Bool:
      return aig.max_input_var(o.bfr());
    case SymObj::Kind::Int: {
      for (Bfr b : o.bits()) consider(aig.max_input_var(b));
      return out;
    }
    case SymObj::Kind::Cons:
      consider(max_boolean_var(o.car(), aig));
      consider(max_boolean_var(o.cdr(), aig));
      return out;
    case SymObj::Kind::Ite:
    case SymObj::Kind::Apply: {
      for (const SymObj& k : o.args()) consider(max_boolean_var(k, aig));
      return out;
    }
  }
  return out;
}

std::string sobj_to_string(const SymObj& o, const AigMan& aig) {
  std::ostringstream os;
  switch (o.kind()) {
    case SymObj::Kind::Concrete:
      os << print_value(o.value());
      break;
    case SymObj::Kind::Bool:
      os << "(:G-BOOLEAN . " << aig.to_string(o.bfr()) << ")";
      break;
    case SymObj::Kind::Int: {
      os << "(:G-INTEGER";
      for (Bfr b : o.bits()) os << " " << aig.to_string(b);
      os << ")";
      break;
    }
    case SymObj::Kind::Cons:
      os << "(:G-CONS " << sobj_to_string(o.car(), aig) << " "
         << sobj_to_string(o.cdr(), aig) << ")";
      break;
    case SymObj::Kind::Ite:
      os << "(:G-ITE " << sobj_to_string(o.test(), aig) << " "
         << sobj_to_string(o.then_branch(), aig) << " "
         << sobj_to_string(o.else_branch(), aig) << ")";
      break;
    case SymObj::Kind::Apply: {
      os << "(:G-APPLY " << symbol_name(o.fn());
      for (const SymObj& a : o.args()) os << " " << sobj_to_string(a, aig);
      os << ")";
      break;
    }
    case SymObj::Kind::Var:
      os << "(:G-VAR . " << symbol_name(o.var_name()) << ")";
      break;
  }
  return os.str();
}

}  // namespace termblast
