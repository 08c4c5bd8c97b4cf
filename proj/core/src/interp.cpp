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

#include "termblast/interp.hpp"

#include <algorithm>
#include <sstream>

#include "termblast/sat.hpp"

namespace termblast {

namespace {

struct DepthGuard {
  InterpState& st;
  explicit DepthGuard(InterpState& s) : st(s) {
    if (++st.depth > st.limits.interp_depth)
      throw InterpError("interpreter recursion depth exceeded (" +
                        std::to_string(st.limits.interp_depth) + ")");
  }
  ~DepthGuard() { --st.depth; }
};

struct PathGuard {
  InterpState& st;
  Bfr saved;
  PathGuard(InterpState& s, Bfr pc) : st(s), saved(s.pathcond) { st.pathcond = pc; }
  ~PathGuard() { st.pathcond = saved; }
};

struct BackchainGuard {
  InterpState& st;
  explicit BackchainGuard(InterpState& s) : st(s) { ++st.backchain_used; }
  ~BackchainGuard() { --st.backchain_used; }
};

// In iff context only truthiness matters: concretes collapse to constant
// booleans, symbolic integers and conses to true.
SymObj iff_normalize(SymObj o, EquivCtx ctx) {
  if (ctx != EquivCtx::Iff) return o;
  switch (o.kind()) {
    case SymObj::Kind::Concrete:
      return SymObj::boolean(o.value().truthy() ? bfr_true : bfr_false);
    case SymObj::Kind::Int:
    case SymObj::Kind::Cons:
      return SymObj::boolean(bfr_true);
    default:
      return o;
  }
}

// ---------------------------------------------------------------------------
// Bit-vector helpers for the built-in counterparts. Integers are
// two's-complement bit lists, LSB first, last bit = sign.

Bfr sign_bit(const std::vector<Bfr>& a) { return a.back(); }

Bfr bit_at(const std::vector<Bfr>& a, size_t i) {
  return i < a.size() ? a[i] : sign_bit(a);
}

std::vector<Bfr> sign_extend(const std::vector<Bfr>& a, size_t w) {
  std::vector<Bfr> out;
  out.reserve(w);
  for (size_t i = 0; i < w; ++i) out.push_back(bit_at(a, i));
  return out;
}

std::vector<Bfr> add_bits(AigMan& m, const std::vector<Bfr>& a, const std::vector<Bfr>& b,
                          Bfr carry_in) {
  size_t w = std::max(a.size(), b.size()) + 1;
  std::vector<Bfr> out;
  out.reserve(w);
  Bfr c = carry_in;
  for (size_t i = 0; i < w; ++i) {
    Bfr x = bit_at(a, i);
    Bfr y = bit_at(b, i);
    out.push_back(m.lxor(m.lxor(x, y), c));
    c = m.lor(m.land(x, y), m.land(c, m.lxor(x, y)));
  }
  return out;
}

std::vector<Bfr> neg_bits(AigMan& m, const std::vector<Bfr>& a) {
  std::vector<Bfr> na;
  na.reserve(a.size());
  for (Bfr b : a) na.push_back(!b);
  return add_bits(m, na, {bfr_false}, bfr_true);
}

std::vector<Bfr> not_bits(const std::vector<Bfr>& a) {
  std::vector<Bfr> out;
  out.reserve(a.size());
  for (Bfr b : a) out.push_back(!b);
  return out;
}

Bfr lt_bits(AigMan& m, const std::vector<Bfr>& a, const std::vector<Bfr>& b) {
  // a < b iff a - b < 0; the subtraction is exact at width max+1.
  std::vector<Bfr> diff = add_bits(m, a, not_bits(sign_extend(b, std::max(a.size(), b.size()))),
                                   bfr_true);
  return sign_bit(diff);
}

Bfr eq_bits(AigMan& m, const std::vector<Bfr>& a, const std::vector<Bfr>& b) {
  size_t w = std::max(a.size(), b.size());
  Bfr out = bfr_true;
  for (size_t i = 0; i < w; ++i) out = m.land(out, m.liff(bit_at(a, i), bit_at(b, i)));
  return out;
}

// Integer view for arithmetic counterparts: non-integers fix to 0.
std::optional<std::vector<Bfr>> arith_bits(const SymObj& o) {
  switch (o.kind()) {
    case SymObj::Kind::Int:
      return o.bits();
    case SymObj::Kind::Concrete:
      if (o.value().is_integer()) return encode_const_int(o.value().num());
      return std::vector<Bfr>{bfr_false};
    case SymObj::Kind::Bool:
    case SymObj::Kind::Cons:
      return std::vector<Bfr>{bfr_false};
    default:
      return std::nullopt;
  }
}

// Strict integer view for the bit-manipulation counterparts: only Int
// objects and concrete integers; anything else declines to the term level.
std::optional<std::vector<Bfr>> int_bits_strict(const SymObj& o) {
  if (o.is(SymObj::Kind::Int)) return o.bits();
  if (o.is(SymObj::Kind::Concrete) && o.value().is_integer())
    return encode_const_int(o.value().num());
  return std::nullopt;
}

// Natural-number view of a syntactically concrete size/index argument
// (nfix semantics). Declines on huge sizes to keep widths bounded.
std::optional<size_t> concrete_nat(const SymObj& o) {
  if (!general_concretep(o)) return std::nullopt;
  Value v = general_concrete_obj(o);
  if (!v.is_integer()) return size_t{0};
  if (mpz_sgn(v.num().get_mpz_t()) < 0) return size_t{0};
  if (!v.num().fits_ulong_p()) return std::nullopt;
  unsigned long n = v.num().get_ui();
  if (n > (1u << 20)) return std::nullopt;
  return static_cast<size_t>(n);
}

std::optional<mpz_class> concrete_int(const SymObj& o) {
  if (!general_concretep(o)) return std::nullopt;
  Value v = general_concrete_obj(o);
  if (!v.is_integer()) return std::nullopt;
  return v.num();
}

SymObj int_obj(std::vector<Bfr> bits) {
  // Keep concreteness syntactic where the bits are constant.
  bool all_const = std::all_of(bits.begin(), bits.end(), [](Bfr b) { return b.is_const(); });
  if (all_const) {
    std::vector<bool> bs;
    for (Bfr b : bits) bs.push_back(b.is_true());
    return SymObj::concrete(Value::integer(decode_int_bits(bs)));
  }
  return SymObj::integer(std::move(bits));
}

SymObj bool_obj(Bfr b) {
  if (b.is_true()) return SymObj::concrete(Value::t());
  if (b.is_false()) return SymObj::concrete(Value::nil());
  return SymObj::boolean(b);
}

// ---------------------------------------------------------------------------
// Counterparts. Each returns nullopt to decline, letting interp_fncall
// fall through to the uninterpreted/definition reductions.

using Counterpart = std::optional<SymObj> (*)(const std::vector<SymObj>&, InterpState&);

void need_arity(SymbolId fn, const std::vector<SymObj>& args, size_t n) {
  if (args.size() != n)
    throw InterpError("wrong arity for " + symbol_name(fn) + ": got " +
                      std::to_string(args.size()));
}

// equal: Bool/Int/Concrete/Cons-of-such bit-blast to an equivalence
// formula; term-level operands decline (rewrites or variable generation
// take over). Structurally equal objects are equal outright.
std::optional<Bfr> equal_bfr(AigMan& m, const SymObj& a, const SymObj& b) {
  if (SymObj::equal(a, b)) return bfr_true;
  auto kind_of = [](const SymObj& o) -> int {
    switch (o.kind()) {
      case SymObj::Kind::Bool:
        return 0;
      case SymObj::Kind::Int:
        return 1;
      case SymObj::Kind::Cons:
        return 2;
      case SymObj::Kind::Concrete: {
        const Value& v = o.value();
        if (v.is_boolean()) return 0;
        if (v.is_integer()) return 1;
        if (v.is_cons()) return 2;
        return 3;  // other atom
      }
      default:
        return -1;  // term-level: decline
    }
  };
  int ka = kind_of(a);
  int kb = kind_of(b);
  if (ka < 0 || kb < 0) return std::nullopt;
  if (a.is(SymObj::Kind::Concrete) && b.is(SymObj::Kind::Concrete))
    return Value::equal(a.value(), b.value()) ? bfr_true : bfr_false;
  if (ka != kb) return bfr_false;
  switch (ka) {
    case 0: {
      auto to_bfr = [](const SymObj& o) {
        return o.is(SymObj::Kind::Bool) ? o.bfr()
                                        : (o.value().is_t() ? bfr_true : bfr_false);
      };
      return m.liff(to_bfr(a), to_bfr(b));
    }
    case 1: {
      auto bits = [](const SymObj& o) {
        return o.is(SymObj::Kind::Int) ? o.bits() : encode_const_int(o.value().num());
      };
      return eq_bits(m, bits(a), bits(b));
    }
    case 2: {
      auto split = [](const SymObj& o, bool first) {
        if (o.is(SymObj::Kind::Cons)) return first ? o.car() : o.cdr();
        return SymObj::concrete(first ? o.value().car() : o.value().cdr());
      };
      auto c1 = equal_bfr(m, split(a, true), split(b, true));
      if (!c1) return std::nullopt;
      auto c2 = equal_bfr(m, split(a, false), split(b, false));
      if (!c2) return std::nullopt;
      return m.land(*c1, *c2);
    }
    default:
      // Distinct concrete atoms were handled above; mixed with kind 3
      // means one side is a non-boolean/non-integer atom, the other a
      // symbolic Bool/Int/Cons: never equal.
      return bfr_false;
  }
}

std::optional<SymObj> cp_equal(const std::vector<SymObj>& a, InterpState& st) {
  need_arity(syms().EQUAL, a, 2);
  auto r = equal_bfr(st.aig, a[0], a[1]);
  if (!r) return std::nullopt;
  return bool_obj(*r);
}

std::optional<SymObj> cp_not(const std::vector<SymObj>& a, InterpState& st) {
  need_arity(syms().NOT, a, 1);
  switch (a[0].kind()) {
    case SymObj::Kind::Concrete:
      return SymObj::concrete(Value::boolean(!a[0].value().truthy()));
    case SymObj::Kind::Bool:
      return bool_obj(st.aig.lnot(a[0].bfr()));
    case SymObj::Kind::Int:
    case SymObj::Kind::Cons:
      return SymObj::concrete(Value::nil());
    default:
      return std::nullopt;
  }
}

std::optional<SymObj> cp_consp(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().CONSP, a, 1);
  switch (a[0].kind()) {
    case SymObj::Kind::Concrete:
      return SymObj::concrete(Value::boolean(a[0].value().is_cons()));
    case SymObj::Kind::Cons:
      return SymObj::concrete(Value::t());
    case SymObj::Kind::Bool:
    case SymObj::Kind::Int:
      return SymObj::concrete(Value::nil());
    default:
      return std::nullopt;
  }
}

std::optional<SymObj> cp_integerp(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().INTEGERP, a, 1);
  switch (a[0].kind()) {
    case SymObj::Kind::Concrete:
      return SymObj::concrete(Value::boolean(a[0].value().is_integer()));
    case SymObj::Kind::Int:
      return SymObj::concrete(Value::t());
    case SymObj::Kind::Bool:
    case SymObj::Kind::Cons:
      return SymObj::concrete(Value::nil());
    default:
      return std::nullopt;
  }
}

std::optional<SymObj> cp_booleanp(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().BOOLEANP, a, 1);
  switch (a[0].kind()) {
    case SymObj::Kind::Concrete:
      return SymObj::concrete(Value::boolean(a[0].value().is_boolean()));
    case SymObj::Kind::Bool:
      return SymObj::concrete(Value::t());
    case SymObj::Kind::Int:
    case SymObj::Kind::Cons:
      return SymObj::concrete(Value::nil());
    default:
      return std::nullopt;
  }
}

std::optional<SymObj> cp_car(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().CAR, a, 1);
  switch (a[0].kind()) {
    case SymObj::Kind::Concrete:
      return SymObj::concrete(a[0].value().car_or_nil());
    case SymObj::Kind::Cons:
      return a[0].car();
    case SymObj::Kind::Bool:
    case SymObj::Kind::Int:
      return SymObj::concrete(Value::nil());
    default:
      return std::nullopt;
  }
}

std::optional<SymObj> cp_cdr(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().CDR, a, 1);
  switch (a[0].kind()) {
    case SymObj::Kind::Concrete:
      return SymObj::concrete(a[0].value().cdr_or_nil());
    case SymObj::Kind::Cons:
      return a[0].cdr();
    case SymObj::Kind::Bool:
    case SymObj::Kind::Int:
      return SymObj::concrete(Value::nil());
    default:
      return std::nullopt;
  }
}

std::optional<SymObj> cp_cons(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().CONS, a, 2);
  if (a[0].is(SymObj::Kind::Concrete) && a[1].is(SymObj::Kind::Concrete))
    return SymObj::concrete(Value::cons(a[0].value(), a[1].value()));
  return SymObj::cons(a[0], a[1]);
}

std::optional<SymObj> cp_plus(const std::vector<SymObj>& a, InterpState& st) {
  need_arity(syms().BINARY_PLUS, a, 2);
  auto x = arith_bits(a[0]);
  auto y = arith_bits(a[1]);
  if (!x || !y) return std::nullopt;
  return int_obj(add_bits(st.aig, *x, *y, bfr_false));
}

std::optional<SymObj> cp_neg(const std::vector<SymObj>& a, InterpState& st) {
  need_arity(syms().UNARY_MINUS, a, 1);
  auto x = arith_bits(a[0]);
  if (!x) return std::nullopt;
  return int_obj(neg_bits(st.aig, *x));
}

std::optional<SymObj> cp_less(const std::vector<SymObj>& a, InterpState& st) {
  need_arity(syms().LESS, a, 2);
  auto x = arith_bits(a[0]);
  auto y = arith_bits(a[1]);
  if (!x || !y) return std::nullopt;
  return bool_obj(lt_bits(st.aig, *x, *y));
}

std::optional<SymObj> cp_lognot(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().LOGNOT, a, 1);
  auto x = int_bits_strict(a[0]);
  if (!x) return std::nullopt;
  return int_obj(not_bits(*x));
}

// logcons: the bit argument contributes 1 only when it is exactly 1
// (bfix semantics).
std::optional<SymObj> cp_logcons(const std::vector<SymObj>& a, InterpState& st) {
  need_arity(syms().LOGCONS, a, 2);
  Bfr bit;
  const SymObj& b = a[0];
  if (b.is(SymObj::Kind::Concrete)) {
    const Value& v = b.value();
    bit = (v.is_integer() && v.num() == 1) ? bfr_true : bfr_false;
  } else if (b.is(SymObj::Kind::Int)) {
    const std::vector<Bfr>& bits = b.bits();
    if (bits.size() == 1) {
      bit = bfr_false;  // one-bit integers are 0 or -1, never 1
    } else {
      Bfr is_one = bits[0];
      for (size_t i = 1; i < bits.size(); ++i) is_one = st.aig.land(is_one, !bits[i]);
      bit = is_one;
    }
  } else if (b.is(SymObj::Kind::Bool)) {
    bit = bfr_false;  // t and nil both bfix to 0
  } else {
    return std::nullopt;
  }
  auto x = int_bits_strict(a[1]);
  if (!x && (a[1].is(SymObj::Kind::Concrete) || a[1].is(SymObj::Kind::Bool) ||
             a[1].is(SymObj::Kind::Cons)))
    x = std::vector<Bfr>{bfr_false};  // ifix of a non-integer
  if (!x) return std::nullopt;
  std::vector<Bfr> out;
  out.push_back(bit);
  for (Bfr bb : *x) out.push_back(bb);
  return int_obj(std::move(out));
}

std::optional<SymObj> cp_logbitp(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().LOGBITP, a, 2);
  auto n = concrete_nat(a[0]);
  auto x = int_bits_strict(a[1]);
  if (!n || !x) return std::nullopt;
  return bool_obj(bit_at(*x, *n));
}

std::optional<SymObj> cp_loghead(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().LOGHEAD, a, 2);
  auto n = concrete_nat(a[0]);
  auto x = int_bits_strict(a[1]);
  if (!n || !x) return std::nullopt;
  std::vector<Bfr> out;
  for (size_t i = 0; i < *n; ++i) out.push_back(bit_at(*x, i));
  out.push_back(bfr_false);  // nonnegative result
  return int_obj(std::move(out));
}

std::optional<SymObj> cp_logext(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().LOGEXT, a, 2);
  auto n = concrete_nat(a[0]);
  auto x = int_bits_strict(a[1]);
  if (!n || !x) return std::nullopt;
  size_t m = std::max<size_t>(*n, 1);
  return int_obj(sign_extend(*x, m));
}

std::optional<SymObj> cp_ash(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().ASH, a, 2);
  auto x = int_bits_strict(a[0]);
  auto c = concrete_int(a[1]);
  if (!x || !c) return std::nullopt;
  if (!c->fits_slong_p()) return std::nullopt;
  long sh = c->get_si();
  if (sh > (1 << 20)) return std::nullopt;
  if (sh >= 0) {
    std::vector<Bfr> out(static_cast<size_t>(sh), bfr_false);
    out.insert(out.end(), x->begin(), x->end());
    return int_obj(std::move(out));
  }
  size_t drop = static_cast<size_t>(-sh);
  std::vector<Bfr> out;
  for (size_t i = drop; i < x->size(); ++i) out.push_back((*x)[i]);
  if (out.empty()) out.push_back(sign_bit(*x));
  return int_obj(std::move(out));
}

std::optional<SymObj> cp_bool_to_bit(const std::vector<SymObj>& a, InterpState&) {
  need_arity(syms().BOOL_TO_BIT, a, 1);
  switch (a[0].kind()) {
    case SymObj::Kind::Concrete:
      return SymObj::concrete(Value::integer(a[0].value().truthy() ? 1 : 0));
    case SymObj::Kind::Bool:
      return int_obj({a[0].bfr(), bfr_false});
    case SymObj::Kind::Int:
    case SymObj::Kind::Cons:
      return SymObj::concrete(Value::integer(1));  // always truthy
    default:
      return std::nullopt;
  }
}

const std::map<SymbolId, Counterpart>& counterpart_table() {
  const Syms& S = syms();
  static const std::map<SymbolId, Counterpart> table = {
      {S.EQUAL, cp_equal},       {S.NOT, cp_not},
      {S.CONSP, cp_consp},       {S.INTEGERP, cp_integerp},
      {S.ACL2_NUMBERP, cp_integerp},
      {S.BOOLEANP, cp_booleanp}, {S.CAR, cp_car},
      {S.CDR, cp_cdr},           {S.CONS, cp_cons},
      {S.BINARY_PLUS, cp_plus},  {S.UNARY_MINUS, cp_neg},
      {S.LESS, cp_less},         {S.LOGNOT, cp_lognot},
      {S.LOGCONS, cp_logcons},   {S.LOGBITP, cp_logbitp},
      {S.LOGHEAD, cp_loghead},   {S.LOGEXT, cp_logext},
      {S.ASH, cp_ash},           {S.BOOL_TO_BIT, cp_bool_to_bit},
  };
  return table;
}

}  // namespace

bool has_counterpart(SymbolId fn) { return counterpart_table().count(fn) != 0; }

std::optional<SymObj> run_counterpart(SymbolId fn, const std::vector<SymObj>& args,
                                      InterpState& st) {
  auto it = counterpart_table().find(fn);
  if (it == counterpart_table().end()) return std::nullopt;
  return it->second(args, st);
}

Trivalent pathcond_implies(InterpState& st, Bfr b) {
  if (b.is_true()) return Trivalent::True;
  if (b.is_false()) return Trivalent::False;
  uint64_t budget = st.limits.pathcond_sat_budget;
  if (sat_check(st.aig, st.aig.land(st.pathcond, !b), {}, budget).verdict ==
      SatVerdict::Unsat)
    return Trivalent::True;
  if (sat_check(st.aig, st.aig.land(st.pathcond, b), {}, budget).verdict ==
      SatVerdict::Unsat)
    return Trivalent::False;
  return Trivalent::Unknown;
}

Bfr simplify_if_test(const SymObj& o, InterpState& st) {
  DepthGuard guard(st);
  const Syms& S = syms();
  switch (o.kind()) {
    case SymObj::Kind::Bool:
      return o.bfr();
    case SymObj::Kind::Int:
      return bfr_true;
    case SymObj::Kind::Cons:
      return bfr_true;
    case SymObj::Kind::Concrete:
      return o.value().truthy() ? bfr_true : bfr_false;
    case SymObj::Kind::Ite: {
      Bfr ct = simplify_if_test(o.test(), st);
      if (ct.is_true()) return simplify_if_test(o.then_branch(), st);
      if (ct.is_false()) return simplify_if_test(o.else_branch(), st);
      Bfr tb = simplify_if_test(o.then_branch(), st);
      Bfr eb = simplify_if_test(o.else_branch(), st);
      return st.aig.lite(ct, tb, eb);
    }
    case SymObj::Kind::Var: {
      auto r = st.bvars.lookup_or_add(st.aig, o);
      return r.var;
    }
    case SymObj::Kind::Apply: {
      if (o.fn() == S.NOT && o.args().size() == 1)
        return !simplify_if_test(o.args()[0], st);
      if (o.fn() == S.EQUAL && o.args().size() == 2) {
        const SymObj& x = o.args()[0];
        const SymObj& y = o.args()[1];
        auto is_nil = [](const SymObj& s) {
          return s.is(SymObj::Kind::Concrete) && s.value().is_nil();
        };
        if (is_nil(y)) return !simplify_if_test(x, st);
        if (is_nil(x)) return !simplify_if_test(y, st);
      }
      if (o.fn() == S.GL_FORCE_CHECK && o.args().size() == 3) {
        Bfr e = simplify_if_test(o.args()[0], st);
        if (e.is_const()) return e;
        uint64_t budget = st.limits.pathcond_sat_budget;
        if (sat_check(st.aig, st.aig.land(st.pathcond, e), {}, budget).verdict ==
            SatVerdict::Unsat) {
          st.trace_line("force-check: reduced to NIL");
          return bfr_false;
        }
        if (sat_check(st.aig, st.aig.land(st.pathcond, !e), {}, budget).verdict ==
            SatVerdict::Unsat) {
          st.trace_line("force-check: reduced to T");
          return bfr_true;
        }
        return e;
      }
      auto r = st.bvars.lookup_or_add(st.aig, o);
      if (r.newly_added) {
        st.trace_line("bvar " + std::to_string(r.index) + " <- " +
                      sobj_to_string(o, st.aig));
        // Constraint bodies hold globally; interpret them outside the
        // branch path condition.
        PathGuard pg(st, bfr_true);
        instantiate_constraints(
            st.bvars, st.aig, st.db, r.index,
            [&st](const Term& body, const Substitution& subst) {
              SymObj b = interp_term(body, subst, EquivCtx::Iff, st);
              return simplify_if_test(b, st);
            },
            st.limits.constraint_tuple_cap,
            st.warn ? st.warn : std::function<void(const std::string&)>{});
      }
      return r.var;
    }
  }
  throw InterpError("malformed symbolic object in if test");
}

namespace {

bool cons_like(const SymObj& o) {
  return o.is(SymObj::Kind::Cons) ||
         (o.is(SymObj::Kind::Concrete) && o.value().is_cons());
}

SymObj cons_part(const SymObj& o, bool first) {
  if (o.is(SymObj::Kind::Cons)) return first ? o.car() : o.cdr();
  return SymObj::concrete(first ? o.value().car() : o.value().cdr());
}

// Typed componentwise merge (no rules, no interpretation): merge like
// kinds, produce an if-then-else object where kinds differ.
SymObj merge_basic(Bfr c, const SymObj& a, const SymObj& b, InterpState& st) {
  if (SymObj::equal(a, b)) return a;
  enum class MKind { Boolean, Integer, Cons, Other };
  auto mk = [](const SymObj& o) {
    switch (o.kind()) {
      case SymObj::Kind::Bool:
        return MKind::Boolean;
      case SymObj::Kind::Int:
        return MKind::Integer;
      case SymObj::Kind::Cons:
        return MKind::Cons;
      case SymObj::Kind::Concrete:
        if (o.value().is_boolean()) return MKind::Boolean;
        if (o.value().is_integer()) return MKind::Integer;
        if (o.value().is_cons()) return MKind::Cons;
        return MKind::Other;
      default:
        return MKind::Other;
    }
  };
  MKind ka = mk(a);
  MKind kb = mk(b);
  if (ka == kb && ka == MKind::Boolean) {
    auto to_bfr = [](const SymObj& o) {
      return o.is(SymObj::Kind::Bool) ? o.bfr() : (o.value().is_t() ? bfr_true : bfr_false);
    };
    return bool_obj(st.aig.lite(c, to_bfr(a), to_bfr(b)));
  }
  if (ka == kb && ka == MKind::Integer) {
    auto bits = [](const SymObj& o) {
      return o.is(SymObj::Kind::Int) ? o.bits() : encode_const_int(o.value().num());
    };
    std::vector<Bfr> ba = bits(a);
    std::vector<Bfr> bb = bits(b);
    size_t w = std::max(ba.size(), bb.size());
    std::vector<Bfr> out;
    out.reserve(w);
    for (size_t i = 0; i < w; ++i)
      out.push_back(st.aig.lite(c, bit_at(ba, i), bit_at(bb, i)));
    return int_obj(std::move(out));
  }
  if (ka == kb && ka == MKind::Cons) {
    return SymObj::cons(merge_basic(c, cons_part(a, true), cons_part(b, true), st),
                        merge_basic(c, cons_part(a, false), cons_part(b, false), st));
  }
  return SymObj::ite(SymObj::boolean(c), a, b);
}

std::optional<SymObj> try_merge_rules(Bfr c, const SymObj& then, const SymObj& els,
                                      EquivCtx ctx, InterpState& st) {
  const Syms& S = syms();
  SymbolId head;
  if (then.is(SymObj::Kind::Apply))
    head = then.fn();
  else if (cons_like(then))
    head = S.CONS;
  else
    return std::nullopt;
  for (const BranchMergeRule& rule : st.db.merges_for(head)) {
    Substitution subst;
    if (!unify(rule.then_pattern, then, subst)) continue;
    subst[rule.test_var] = SymObj::boolean(c);
    subst[rule.else_var] = els;
    st.trace_line("branch-merge " + symbol_name(rule.name) + ": applied");
    return interp_term(rule.rhs, subst, ctx, st);
  }
  return std::nullopt;
}

}  // namespace

SymObj merge_branches(Bfr c, const SymObj& then, const SymObj& els, EquivCtx ctx,
                      InterpState& st) {
  DepthGuard guard(st);
  if (SymObj::equal(then, els)) return then;
  if (auto r = try_merge_rules(c, then, els, ctx, st)) return *r;
  if (auto r = try_merge_rules(!c, els, then, ctx, st)) return *r;
  if (then.is(SymObj::Kind::Apply) && els.is(SymObj::Kind::Apply) &&
      then.fn() == els.fn() && then.args().size() == els.args().size()) {
    std::vector<SymObj> margs;
    margs.reserve(then.args().size());
    for (size_t i = 0; i < then.args().size(); ++i)
      margs.push_back(merge_branches(c, then.args()[i], els.args()[i], EquivCtx::Equal, st));
    return interp_fncall(then.fn(), margs, ctx, st);
  }
  if (cons_like(then) && cons_like(els)) {
    std::vector<SymObj> margs{
        merge_branches(c, cons_part(then, true), cons_part(els, true), EquivCtx::Equal, st),
        merge_branches(c, cons_part(then, false), cons_part(els, false), EquivCtx::Equal,
                       st)};
    return interp_fncall(syms().CONS, margs, ctx, st);
  }
  return merge_basic(c, then, els, st);
}

SymObj interp_if(const Term& test, const Term& then, const Term& els,
                 const SymBindings& bindings, EquivCtx ctx, InterpState& st) {
  SymObj to = interp_term(test, bindings, EquivCtx::Iff, st);
  Bfr c = simplify_if_test(to, st);
  if (c.is_true()) return interp_term(then, bindings, ctx, st);
  if (c.is_false()) return interp_term(els, bindings, ctx, st);
  Trivalent known = pathcond_implies(st, c);
  if (known == Trivalent::True) {
    PathGuard pg(st, st.aig.land(st.pathcond, c));
    return interp_term(then, bindings, ctx, st);
  }
  if (known == Trivalent::False) {
    PathGuard pg(st, st.aig.land(st.pathcond, !c));
    return interp_term(els, bindings, ctx, st);
  }
  SymObj to_then, to_else;
  {
    PathGuard pg(st, st.aig.land(st.pathcond, c));
    to_then = interp_term(then, bindings, ctx, st);
  }
  {
    PathGuard pg(st, st.aig.land(st.pathcond, !c));
    to_else = interp_term(els, bindings, ctx, st);
  }
  return merge_branches(c, to_then, to_else, ctx, st);
}

std::optional<BoundTerm> try_rewrite(const RewriteRule& rule, SymbolId fn,
                                     const std::vector<SymObj>& args, EquivCtx ctx,
                                     InterpState& st) {
  (void)ctx;
  ++st.stats.rewrite_attempts;
  std::ostringstream tr;
  tr << "rewrite " << symbol_name(rule.name) << ": ";
  if (rule.lhs.fn() != fn || rule.lhs.args().size() != args.size()) {
    tr << "arity mismatch";
    st.trace_line(tr.str());
    return std::nullopt;
  }
  Substitution subst;
  for (size_t i = 0; i < args.size(); ++i) {
    if (!unify(rule.lhs.args()[i], args[i], subst)) {
      tr << "unify failed";
      st.trace_line(tr.str());
      return std::nullopt;
    }
  }
  tr << "unify ok";
  size_t hyp_no = 0;
  for (const RuleHyp& hyp : rule.hyps) {
    ++hyp_no;
    if (hyp.syntaxp) {
      ValueBindings refl;
      for (const auto& [v, o] : subst) refl[v] = reflect(o);
      EvalCtx ectx(st.db);
      ectx.syntaxp_reflection = true;
      ectx.depth_limit = st.limits.eval_depth;
      bool ok = false;
      try {
        ok = eval_term(hyp.term, refl, ectx).truthy();
      } catch (const EvalError& e) {
        tr << ", syntaxp " << hyp_no << " error (" << e.what() << ")";
        st.trace_line(tr.str());
        return std::nullopt;
      }
      if (!ok) {
        tr << ", syntaxp " << hyp_no << " failed";
        st.trace_line(tr.str());
        return std::nullopt;
      }
      tr << ", syntaxp " << hyp_no << " ok";
      continue;
    }
    if (st.backchain_used >= st.limits.backchain_depth) {
      tr << ", hyp " << hyp_no << " backchain limit";
      st.trace_line(tr.str());
      return std::nullopt;
    }
    BackchainGuard bg(st);
    SymObj h = interp_term(hyp.term, subst, EquivCtx::Iff, st);
    Bfr hb = simplify_if_test(h, st);
    bool relieved = false;
    if (hb.is_true())
      relieved = true;
    else if (!hb.is_false())
      relieved = pathcond_implies(st, hb) == Trivalent::True;
    if (!relieved) {
      tr << ", hyp " << hyp_no << " not relieved";
      st.trace_line(tr.str());
      return std::nullopt;
    }
    tr << ", hyp " << hyp_no << " ok";
  }
  tr << " => applied";
  st.trace_line(tr.str());
  return instantiate(rule.rhs, subst);
}

namespace {

SymObj interp_fncall_inner(SymbolId fn, const std::vector<SymObj>& args, EquivCtx ctx,
                           InterpState& st) {
  const Syms& S = syms();
  ++st.stats.fncalls;
  UninterpMode mode = st.db.uninterp_mode(fn);

  // (1) Concrete evaluation, unless fully uninterpreted.
  if (mode != UninterpMode::Uninterpreted &&
      (st.db.defn(fn) || core_primitive_p(fn) || st.db.native(fn))) {
    bool all_concrete = std::all_of(args.begin(), args.end(),
                                    [](const SymObj& o) { return general_concretep(o); });
    if (all_concrete) {
      std::vector<Value> vals;
      vals.reserve(args.size());
      for (const SymObj& o : args) vals.push_back(general_concrete_obj(o));
      EvalCtx ectx(st.db);
      ectx.depth_limit = st.limits.eval_depth;
      ++st.stats.concrete_evals;
      return SymObj::concrete(eval_apply(fn, vals, ectx));
    }
  }

  // (2) Rewrite rules, in declaration order.
  for (const RewriteRule& rule : st.db.rewrites_for(fn)) {
    if (rule.equiv == Equiv::Iff && ctx != EquivCtx::Iff) continue;
    if (auto r = try_rewrite(rule, fn, args, ctx, st)) {
      if (++st.rewrite_count > st.limits.rewrite_steps)
        throw InterpError("rewrite step limit exceeded (" +
                          std::to_string(st.limits.rewrite_steps) +
                          "); possible rule loop at " + symbol_name(rule.name));
      ++st.stats.rewrite_successes;
      return interp_term(r->term, r->subst, ctx, st);
    }
  }

  // (3) Built-in symbolic counterpart.
  if (auto r = run_counterpart(fn, args, st)) {
    ++st.stats.counterpart_hits;
    return *r;
  }

  // (4) Uninterpreted: return a call object.
  if (mode != UninterpMode::Interpreted) return SymObj::apply(fn, args);

  // (5) Definition expansion.
  if (const Defn* d = st.db.defn(fn)) {
    if (d->formals.size() != args.size())
      throw InterpError("wrong arity for " + symbol_name(fn) + ": got " +
                        std::to_string(args.size()) + ", expected " +
                        std::to_string(d->formals.size()));
    SymBindings frame;
    for (size_t i = 0; i < args.size(); ++i) frame[d->formals[i]] = args[i];
    return interp_term(d->body, frame, ctx, st);
  }
  // Core primitives have no definitional expansion; an unreduced call
  // stays term-level for rewrites or variable generation to handle.
  if (core_primitive_p(fn) || fn == S.GL_FORCE_CHECK) return SymObj::apply(fn, args);
  throw InterpError("undefined function: " + symbol_name(fn));
}

}  // namespace

SymObj interp_fncall(SymbolId fn, const std::vector<SymObj>& args, EquivCtx ctx,
                     InterpState& st) {
  DepthGuard guard(st);
  return iff_normalize(interp_fncall_inner(fn, args, ctx, st), ctx);
}

SymObj interp_term(const Term& t, const SymBindings& bindings, EquivCtx ctx,
                   InterpState& st) {
  DepthGuard guard(st);
  const Syms& S = syms();
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = bindings.find(t.var_name());
      if (it == bindings.end())
        throw InterpError("unbound variable: " + symbol_name(t.var_name()));
      return iff_normalize(it->second, ctx);
    }
    case Term::Kind::Quote:
      return iff_normalize(SymObj::concrete(t.quoted()), ctx);
    case Term::Kind::LambdaApp: {
      SymBindings frame;
      for (size_t i = 0; i < t.args().size(); ++i)
        frame[t.formals()[i]] = interp_term(t.args()[i], bindings, EquivCtx::Equal, st);
      return interp_term(t.body(), frame, ctx, st);
    }
    case Term::Kind::App: {
      if (t.fn() == S.IF) {
        if (t.args().size() != 3) throw InterpError("if takes three arguments");
        return interp_if(t.args()[0], t.args()[1], t.args()[2], bindings, ctx, st);
      }
      std::vector<SymObj> args;
      args.reserve(t.args().size());
      for (const Term& at : t.args())
        args.push_back(interp_term(at, bindings, EquivCtx::Equal, st));
      return interp_fncall(t.fn(), args, ctx, st);
    }
  }
  throw InterpError("malformed term");
}

}  // namespace termblast
