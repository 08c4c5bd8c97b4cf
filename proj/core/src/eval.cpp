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

#include "termblast/eval.hpp"

#include <set>

namespace termblast {

namespace {

struct DepthGuard {
  EvalCtx& ctx;
  explicit DepthGuard(EvalCtx& c) : ctx(c) {
    if (++ctx.depth > ctx.depth_limit)
      throw EvalError("evaluation recursion depth exceeded (" +
                      std::to_string(ctx.depth_limit) + ")");
  }
  ~DepthGuard() { --ctx.depth; }
};

const mpz_class& int_fix(const Value& v) {
  static const mpz_class zero = 0;
  return v.is_integer() ? v.num() : zero;
}

bool reflection_aware(SymbolId fn) {
  const Syms& S = syms();
  static const std::set<SymbolId> raw = {
      S.CONSP, S.CAR,  S.CDR,          S.EQUAL,
      S.EQ,    S.NOT,  S.TAG,          S.GENERAL_CONCRETEP,
      S.GENERAL_CONCRETE_OBJ, S.G_APPLY_TO_FN, S.G_APPLY_TO_ARGS};
  return raw.count(fn) != 0;
}

Value eval_primitive(SymbolId fn, const std::vector<Value>& a) {
  const Syms& S = syms();
  auto need = [&](size_t n) {
    if (a.size() != n)
      throw EvalError("wrong arity for " + symbol_name(fn) + ": got " +
                      std::to_string(a.size()));
  };
  if (fn == S.CONS) {
    need(2);
    return Value::cons(a[0], a[1]);
  }
  if (fn == S.CAR) {
    need(1);
    return a[0].car_or_nil();
  }
  if (fn == S.CDR) {
    need(1);
    return a[0].cdr_or_nil();
  }
  if (fn == S.CONSP) {
    need(1);
    return Value::boolean(a[0].is_cons());
  }
  if (fn == S.EQUAL) {
    need(2);
    return Value::boolean(Value::equal(a[0], a[1]));
  }
  if (fn == S.NOT) {
    need(1);
    return Value::boolean(!a[0].truthy());
  }
  if (fn == S.INTEGERP || fn == S.ACL2_NUMBERP) {
    need(1);
    return Value::boolean(a[0].is_integer());
  }
  if (fn == S.SYMBOLP) {
    need(1);
    return Value::boolean(a[0].is_symbol());
  }
  if (fn == S.BOOLEANP) {
    need(1);
    return Value::boolean(a[0].is_boolean());
  }
  if (fn == S.STRINGP) {
    need(1);
    return Value::boolean(a[0].is_string());
  }
  if (fn == S.BINARY_PLUS) {
    need(2);
    return Value::integer(mpz_class(int_fix(a[0]) + int_fix(a[1])));
  }
  if (fn == S.BINARY_STAR) {
    need(2);
    return Value::integer(mpz_class(int_fix(a[0]) * int_fix(a[1])));
  }
  if (fn == S.UNARY_MINUS) {
    need(1);
    return Value::integer(mpz_class(-int_fix(a[0])));
  }
  if (fn == S.LESS) {
    need(2);
    return Value::boolean(int_fix(a[0]) < int_fix(a[1]));
  }
  if (fn == S.FLOOR) {
    need(2);
    const mpz_class& x = int_fix(a[0]);
    const mpz_class& y = int_fix(a[1]);
    if (mpz_sgn(y.get_mpz_t()) == 0) return Value::integer(0);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return Value::integer(std::move(q));
  }
  if (fn == S.MOD) {
    need(2);
    const mpz_class& x = int_fix(a[0]);
    const mpz_class& y = int_fix(a[1]);
    if (mpz_sgn(y.get_mpz_t()) == 0) return Value::integer(mpz_class(x));
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return Value::integer(std::move(r));
  }
  if (fn == S.LLORDER) {
    need(2);
    return Value::boolean(Value::order(a[0], a[1]) < 0);
  }
  throw EvalError("not a primitive: " + symbol_name(fn));
}

}  // namespace

bool core_primitive_p(SymbolId fn) {
  const Syms& S = syms();
  static const std::set<SymbolId> prims = {
      S.CONS,        S.CAR,         S.CDR,    S.CONSP,       S.EQUAL, S.NOT,
      S.INTEGERP,    S.SYMBOLP,     S.BOOLEANP, S.STRINGP,   S.BINARY_PLUS,
      S.BINARY_STAR, S.UNARY_MINUS, S.LESS,   S.FLOOR,       S.MOD,
      S.ACL2_NUMBERP, S.LLORDER};
  return prims.count(fn) != 0;
}

Value eval_apply(SymbolId fn, const std::vector<Value>& args, EvalCtx& ctx) {
  DepthGuard guard(ctx);
  if (core_primitive_p(fn)) return eval_primitive(fn, args);
  if (const auto* nat = ctx.db().native(fn)) {
    if (nat->first != args.size())
      throw EvalError("wrong arity for " + symbol_name(fn));
    return nat->second(args, ctx);
  }
  const Defn* d = ctx.db().defn(fn);
  if (!d) throw EvalError("undefined function: " + symbol_name(fn));
  if (d->formals.size() != args.size())
    throw EvalError("wrong arity for " + symbol_name(fn) + ": got " +
                    std::to_string(args.size()) + ", expected " +
                    std::to_string(d->formals.size()));
  ValueBindings frame;
  for (size_t i = 0; i < args.size(); ++i) frame[d->formals[i]] = args[i];
  return eval_term(d->body, frame, ctx);
}

Value eval_term(const Term& t, const ValueBindings& bindings, EvalCtx& ctx) {
  DepthGuard guard(ctx);
  const Syms& S = syms();
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = bindings.find(t.var_name());
      if (it == bindings.end())
        throw EvalError("unbound variable: " + symbol_name(t.var_name()));
      return it->second;
    }
    case Term::Kind::Quote:
      return t.quoted();
    case Term::Kind::LambdaApp: {
      ValueBindings frame;
      for (size_t i = 0; i < t.args().size(); ++i)
        frame[t.formals()[i]] = eval_term(t.args()[i], bindings, ctx);
      return eval_term(t.body(), frame, ctx);
    }
    case Term::Kind::App: {
      SymbolId fn = t.fn();
      if (fn == S.IF) {
        if (t.args().size() != 3) throw EvalError("if takes three arguments");
        Value test = eval_term(t.args()[0], bindings, ctx);
        return eval_term(t.args()[test.truthy() ? 1 : 2], bindings, ctx);
      }
      std::vector<Value> args;
      args.reserve(t.args().size());
      for (const Term& at : t.args()) args.push_back(eval_term(at, bindings, ctx));
      if (ctx.syntaxp_reflection && !reflection_aware(fn)) {
        for (Value& v : args) {
          if (v.is_cons() && v.car().is_symbol() && v.car().sym() == S.K_CONCRETE)
            v = v.cdr();
        }
      }
      return eval_apply(fn, args, ctx);
    }
  }
  throw EvalError("malformed term");
}

Value eval_term(const Term& t, const ValueBindings& bindings, const EventDb& db,
                int depth_limit) {
  EvalCtx ctx(db);
  ctx.depth_limit = depth_limit;
  return eval_term(t, bindings, ctx);
}

}  // namespace termblast
