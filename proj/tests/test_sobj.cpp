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

#include <doctest.h>

#include "support.hpp"

using namespace termblast;
using termblast::test::tparse;

TEST_SUITE_BEGIN("sobj");

TEST_CASE("five-bit two's-complement decode: [F F F F T] is -16") {
  // Independent decode oracle.
  std::vector<bool> bits{false, false, false, false, true};
  long expected = 0;
  for (int i = 0; i < 4; ++i)
    if (bits[i]) expected += 1L << i;
  if (bits[4]) expected -= 1L << 4;
  CHECK(expected == -16);

  EventDb db = make_base_db();
  AigMan aig;
  SymObj o = SymObj::integer({bfr_false, bfr_false, bfr_false, bfr_false, bfr_true});
  SymEnv env;
  CHECK(Value::equal(sym_eval(o, env, aig, db), Value::integer(-16)));
}

TEST_CASE("int encode/decode inverse") {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<long> d(-100000, 100000);
  for (int i = 0; i < 500; ++i) {
    mpz_class v(d(rng));
    std::vector<Bfr> bits = encode_const_int(v);
    std::vector<bool> bs;
    for (Bfr b : bits) bs.push_back(b.is_true());
    CHECK(decode_int_bits(bs) == v);
    // an n-bit encoding round-trips iff the value fits in n signed bits
    size_t n = bits.size();
    mpz_class lo = -(mpz_class(1) << (n - 1));
    mpz_class hi = (mpz_class(1) << (n - 1)) - 1;
    CHECK(v >= lo);
    CHECK(v <= hi);
  }
}

TEST_CASE("ite and var evaluation") {
  EventDb db = make_base_db();
  AigMan aig;
  Bfr x0 = aig.input(0);
  SymObj ite = SymObj::ite(SymObj::boolean(x0),
                           SymObj::concrete(test::vparse("((:a . t))")),
                           SymObj::concrete(Value::nil()));
  SymEnv env;
  env.boolean.set(0, true);
  CHECK(print_value(sym_eval(ite, env, aig, db)) == "((:A . T))");
  env.boolean.set(0, false);
  CHECK(sym_eval(ite, env, aig, db).is_nil());

  SymObj var = SymObj::var(intern("X"));
  SymEnv env2;
  env2.vars[intern("X")] = Value::integer(16);
  CHECK(Value::equal(sym_eval(var, env2, aig, db), Value::integer(16)));
  SymEnv empty;
  CHECK(sym_eval(var, empty, aig, db).is_nil());  // vars default nil
}

TEST_CASE("apply evaluation goes through the concrete evaluator") {
  EventDb db = make_base_db();
  AigMan aig;
  SymObj o = SymObj::apply(intern("S"), {SymObj::concrete(Value::symbol(":A")),
                                         SymObj::boolean(aig.input(0)),
                                         SymObj::concrete(Value::nil())});
  SymEnv env;
  env.boolean.set(0, true);
  CHECK(print_value(sym_eval(o, env, aig, db)) == "((:A . T))");
  env.boolean.set(0, false);
  CHECK(sym_eval(o, env, aig, db).is_nil());
}

TEST_CASE("syntactic concreteness") {
  AigMan aig;
  CHECK(general_concretep(SymObj::concrete(Value::symbol(":A"))));
  CHECK(Value::equal(general_concrete_obj(SymObj::concrete(Value::symbol(":A"))),
                     Value::symbol(":A")));
  // all-constant bit vector [T F] is the integer 1
  SymObj one = SymObj::integer({bfr_true, bfr_false});
  CHECK(general_concretep(one));
  CHECK(Value::equal(general_concrete_obj(one), Value::integer(1)));
  // function calls are never syntactically concrete
  SymObj call = SymObj::apply(intern("G"), {SymObj::concrete(Value::symbol(":A")),
                                            SymObj::concrete(Value::nil())});
  CHECK(!general_concretep(call));
  CHECK(!general_concretep(SymObj::var(intern("X"))));
  CHECK(!general_concretep(SymObj::integer({aig.input(0)})));
  CHECK(general_concretep(
      SymObj::cons(SymObj::concrete(Value::integer(1)), SymObj::concrete(Value::nil()))));
}

TEST_CASE("evaluation coherence: concrete objects evaluate to their value") {
  EventDb db = make_base_db();
  AigMan aig;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Value v = test::random_value(rng);
    SymObj o = SymObj::concrete(v);
    SymEnv env;
    for (int k = 0; k < 4; ++k) env.boolean.set(k, rng() & 1);
    CHECK(Value::equal(sym_eval(o, env, aig, db), v));
    CHECK(Value::equal(general_concrete_obj(o), v));
  }
}

TEST_CASE("unify: the get-of-set pattern") {
  // pattern (g k1 (s k2 v r)) vs (:g-apply g :a (:g-apply s :a (:g-var b) nil))
  Term pat = tparse("(g k1 (s k2 v r))");
  SymObj b = SymObj::var(intern("B"));
  SymObj inner = SymObj::apply(intern("S"), {SymObj::concrete(Value::symbol(":A")), b,
                                             SymObj::concrete(Value::nil())});
  SymObj obj =
      SymObj::apply(intern("G"), {SymObj::concrete(Value::symbol(":A")), inner});
  Substitution subst;
  REQUIRE(unify(pat, obj, subst));
  CHECK(SymObj::equal(subst.at(intern("K1")), SymObj::concrete(Value::symbol(":A"))));
  CHECK(SymObj::equal(subst.at(intern("K2")), SymObj::concrete(Value::symbol(":A"))));
  CHECK(SymObj::equal(subst.at(intern("V")), b));
  CHECK(SymObj::equal(subst.at(intern("R")), SymObj::concrete(Value::nil())));
}

TEST_CASE("unify: variables bind anything; cons patterns split concrete conses") {
  Substitution subst;
  SymObj any = SymObj::apply(intern("F"), {SymObj::var(intern("Y"))});
  REQUIRE(unify(tparse("x"), any, subst));
  CHECK(SymObj::equal(subst.at(intern("X")), any));

  Substitution s2;
  SymObj pair = SymObj::concrete(test::vparse("(1 . 2)"));
  REQUIRE(unify(tparse("(cons a b)"), pair, s2));
  CHECK(SymObj::equal(s2.at(intern("A")), SymObj::concrete(Value::integer(1))));
  CHECK(SymObj::equal(s2.at(intern("B")), SymObj::concrete(Value::integer(2))));

  // repeated variables must match equal objects
  Substitution s3;
  SymObj two = SymObj::concrete(test::vparse("(1 . 1)"));
  CHECK(unify(tparse("(cons a a)"), two, s3));
  Substitution s4;
  CHECK(!unify(tparse("(cons a a)"), pair, s4));

  // quotes match syntactically concrete objects of equal value
  Substitution s5;
  CHECK(unify(tparse("'3"), SymObj::integer({bfr_true, bfr_true, bfr_false}), s5));
  CHECK(!unify(tparse("'4"), SymObj::integer({bfr_true, bfr_true, bfr_false}), s5));

  // int objects with symbolic bits match only pattern variables
  AigMan aig;
  SymObj symint = SymObj::integer({aig.input(0), bfr_false});
  Substitution s6;
  CHECK(!unify(tparse("(cons a b)"), symint, s6));
  Substitution s7;
  CHECK(unify(tparse("q"), symint, s7));
}

TEST_CASE("unify soundness: instantiated pattern evaluates like the object") {
  EventDb db = make_base_db();
  AigMan aig;
  std::mt19937_64 rng(2718);
  Term pat = tparse("(g k1 (s k2 v r))");
  SymObj obj = SymObj::apply(
      intern("G"),
      {SymObj::concrete(Value::symbol(":A")),
       SymObj::apply(intern("S"), {SymObj::concrete(Value::symbol(":A")),
                                   SymObj::integer({aig.input(0), aig.input(1)}),
                                   SymObj::var(intern("R"))})});
  Substitution subst;
  REQUIRE(unify(pat, obj, subst));
  // for random envs, eval of object == eval_term of pattern under the
  // evaluated substitution
  for (int i = 0; i < 200; ++i) {
    SymEnv env;
    env.boolean.set(0, rng() & 1);
    env.boolean.set(1, rng() & 1);
    env.vars[intern("R")] = test::random_value(rng);
    ValueBindings vb;
    for (const auto& [v, o] : subst) vb[v] = sym_eval(o, env, aig, db);
    Value via_pattern = eval_term(pat, vb, db);
    Value via_object = sym_eval(obj, env, aig, db);
    CHECK(Value::equal(via_pattern, via_object));
  }
}

TEST_CASE("instantiate validates coverage and stays lazy") {
  Substitution subst;
  subst[intern("N")] = SymObj::concrete(Value::integer(2));
  CHECK_NOTHROW(instantiate(tparse("(logbitp (+ 1 (nfix n)) n)"), subst));
  CHECK_THROWS_AS(instantiate(tparse("(logbitp n x)"), subst), std::logic_error);
}

TEST_CASE("reflection tags") {
  AigMan aig;
  CHECK(print_value(reflect(SymObj::concrete(Value::integer(5)))) == "(:CONCRETE . 5)");
  CHECK(print_value(reflect(SymObj::var(intern("X")))) == "(:G-VAR . X)");
  SymObj call = SymObj::apply(intern("S"), {SymObj::concrete(Value::symbol(":A")),
                                            SymObj::var(intern("V")),
                                            SymObj::var(intern("R"))});
  CHECK(print_value(reflect(call)) == "(:G-APPLY S (:CONCRETE . :A) (:G-VAR . V) (:G-VAR . R))");
  CHECK(print_value(reflect(SymObj::boolean(aig.input(0)))) == "(:G-BOOLEAN)");
  // a constant-bit integer reflects as concrete
  CHECK(print_value(reflect(SymObj::integer({bfr_true, bfr_false}))) == "(:CONCRETE . 1)");
}

TEST_CASE("max_boolean_var looks through all parts") {
  AigMan aig;
  SymObj o = SymObj::apply(
      intern("F"), {SymObj::integer({aig.input(3), aig.input(9)}),
                    SymObj::cons(SymObj::boolean(aig.input(5)), SymObj::var(intern("X")))});
  CHECK(max_boolean_var(o, aig) == 9u);
  CHECK(!max_boolean_var(SymObj::var(intern("X")), aig).has_value());
}

TEST_SUITE_END();
