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

namespace {

SymObj logbitp_obj(int n, SymObj data) {
  return SymObj::apply(syms().LOGBITP, {SymObj::concrete(Value::integer(n)), data});
}

}  // namespace

TEST_SUITE_BEGIN("bvardb");

TEST_CASE("lookup_or_add issues sequential variables and deduplicates") {
  AigMan aig;
  BvarDb db(0);
  SymObj x = SymObj::var(intern("X"));
  auto r0 = db.lookup_or_add(aig, logbitp_obj(0, x));
  CHECK(r0.newly_added);
  CHECK(r0.index == 0);
  auto r0again = db.lookup_or_add(aig, logbitp_obj(0, x));
  CHECK(!r0again.newly_added);
  CHECK(r0again.var == r0.var);
  auto r1 = db.lookup_or_add(aig, SymObj::var(intern("Y")));
  CHECK(r1.newly_added);
  CHECK(r1.index == 1);
  CHECK(db.size() == 2);
}

TEST_CASE("only Apply and Var objects get variables") {
  AigMan aig;
  BvarDb db(0);
  CHECK_THROWS_AS(db.lookup_or_add(aig, SymObj::concrete(Value::t())), BvarDbError);
}

TEST_CASE("ordering invariant: entries may not mention later variables") {
  AigMan aig;
  BvarDb db(2);  // shape bits 0,1 live below base
  // mentioning shape bits is fine
  SymObj ok = SymObj::apply(intern("F"), {SymObj::boolean(aig.input(0))});
  CHECK_NOTHROW(db.lookup_or_add(aig, ok));
  // an object mentioning variable base+1 cannot be entry base+1's own index
  SymObj bad = SymObj::apply(intern("H"), {SymObj::boolean(aig.input(5))});
  CHECK_THROWS_AS(db.lookup_or_add(aig, bad), BvarDbError);
  // the earlier generated variable (index 2) may appear in later entries
  SymObj later = SymObj::apply(intern("K"), {SymObj::boolean(aig.input(2))});
  CHECK_NOTHROW(db.lookup_or_add(aig, later));
}

TEST_CASE("extend_env_consistent: empty db leaves env unchanged") {
  AigMan aig;
  BvarDb db(0);
  EventDb events = make_base_db();
  SymEnv env;
  env.vars[intern("X")] = Value::integer(7);
  SymEnv out = extend_env_consistent(db, env, aig, events);
  CHECK(Value::equal(out.vars.at(intern("X")), Value::integer(7)));
  CHECK(check_env_consistent(db, out, aig, events));
}

TEST_CASE("extend_env_consistent: logbitp oracle on 16") {
  AigMan aig;
  BvarDb db(0);
  EventDb events = make_base_db();
  db.lookup_or_add(aig, logbitp_obj(4, SymObj::var(intern("X"))));
  SymEnv env;
  env.vars[intern("X")] = Value::integer(16);
  SymEnv out = extend_env_consistent(db, env, aig, events);
  CHECK(out.boolean.get(0));  // bit 4 of 16 is set
  CHECK(check_env_consistent(db, out, aig, events));
}

TEST_CASE("extend_env_consistent: chained entries evaluate in order") {
  AigMan aig;
  BvarDb db(0);
  EventDb events = make_base_db();
  SymObj x = SymObj::var(intern("X"));
  db.lookup_or_add(aig, SymObj::apply(syms().INTEGERP, {x}));
  db.lookup_or_add(
      aig, SymObj::apply(syms().EQUAL,
                         {SymObj::concrete(Value::integer(0)),
                          SymObj::apply(syms().ASH, {x, SymObj::concrete(Value::integer(-1))})}));
  SymEnv env;
  env.vars[intern("X")] = Value::integer(1);
  SymEnv out = extend_env_consistent(db, env, aig, events);
  CHECK(out.boolean.get(0));  // (integerp 1)
  CHECK(out.boolean.get(1));  // (ash 1 -1) = 0
  CHECK(check_env_consistent(db, out, aig, events));
}

TEST_CASE("check_env_consistent detects the spurious integerp model") {
  AigMan aig;
  BvarDb db(0);
  EventDb events = make_base_db();
  db.lookup_or_add(aig, SymObj::apply(syms().INTEGERP, {SymObj::var(intern("X"))}));
  SymEnv env;
  env.vars[intern("X")] = Value::nil();
  env.boolean.set(0, true);  // model claims (integerp x) although x = nil
  CHECK(!check_env_consistent(db, env, aig, events));
  auto diags = env_disagreements(db, env, aig, events);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].index == 0);
  CHECK(diags[0].model_value);
  CHECK(!diags[0].eval_value);
}

TEST_CASE("extend then check holds on random environments") {
  AigMan aig;
  BvarDb db(1);
  EventDb events = make_base_db();
  SymObj x = SymObj::var(intern("X"));
  db.lookup_or_add(aig, logbitp_obj(0, x));
  db.lookup_or_add(aig, logbitp_obj(3, x));
  db.lookup_or_add(aig, SymObj::apply(syms().INTEGERP, {x}));
  db.lookup_or_add(aig, SymObj::apply(intern("CONSP"), {x}));
  std::mt19937_64 rng(63);
  for (int i = 0; i < 200; ++i) {
    SymEnv env;
    env.boolean.set(0, rng() & 1);  // shape bit below base
    env.vars[intern("X")] = test::random_value(rng);
    SymEnv out = extend_env_consistent(db, env, aig, events);
    CHECK(check_env_consistent(db, out, aig, events));
    CHECK(out.boolean.get(0) == env.boolean.get(0));  // below base untouched
  }
}

TEST_CASE("constraint instantiation: five implications for five bits") {
  EventDb events = test::db_with_files({"theories/bit-constraints.gl"});
  AigMan aig;
  BvarDb db(0);
  InterpState st(aig, db, events);
  SymObj x = SymObj::var(intern("X"));
  // add (logbitp 0..4 x) first: two-binding rule cannot fire yet
  for (int n = 0; n < 5; ++n) simplify_if_test(logbitp_obj(n, x), st);
  CHECK(db.constraint_count() == 0);
  // adding (integerp x) afterwards instantiates all five combinations
  simplify_if_test(SymObj::apply(syms().INTEGERP, {x}), st);
  CHECK(db.constraint_count() == 5);
  // constraints hold under any consistent environment
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    SymEnv env;
    env.vars[intern("X")] = test::random_value(rng);
    SymEnv out = extend_env_consistent(db, env, aig, events);
    CHECK(aig.eval(db.constraints(), out.boolean));
  }
  // no tuple instantiated twice: re-adding the same objects changes nothing
  simplify_if_test(logbitp_obj(2, x), st);
  CHECK(db.constraint_count() == 5);
}

TEST_CASE("single-binding constraint fires immediately") {
  EventDb events = test::db_with_files({"theories/bit-constraints-stronger.gl"});
  AigMan aig;
  BvarDb db(0);
  InterpState st(aig, db, events);
  simplify_if_test(logbitp_obj(0, SymObj::var(intern("X"))), st);
  CHECK(db.constraint_count() == 1);
  CHECK(db.size() == 2);  // the body created (integerp x) itself
}

TEST_CASE("entries are append-only across interpretation (snapshot comparison)") {
  EventDb events = test::db_with_files({"theories/bitblast.gl", "theories/bit-constraints.gl"});
  AigMan aig;
  BvarDb db(0);
  InterpState st(aig, db, events);
  SymBindings b{{intern("X"), SymObj::var(intern("X"))}};
  interp_term(test::tparse("(equal (loghead 3 x) 5)"), b, EquivCtx::Iff, st);
  std::vector<SymObj> snapshot;
  for (size_t i = 0; i < db.size(); ++i) snapshot.push_back(db.entry(i));
  // keep proving: more entries may be appended, none rewritten
  interp_term(test::tparse("(if (integerp x) (equal (loghead 5 x) 9) 'nil)"), b,
              EquivCtx::Iff, st);
  CHECK(db.size() >= snapshot.size());
  for (size_t i = 0; i < snapshot.size(); ++i)
    CHECK(SymObj::equal(db.entry(i), snapshot[i]));
}

TEST_CASE("rules with no unifier leave constraints unchanged") {
  EventDb events = test::db_with_files({"theories/bit-constraints.gl"});
  AigMan aig;
  BvarDb db(0);
  InterpState st(aig, db, events);
  simplify_if_test(SymObj::apply(intern("CONSP"), {SymObj::var(intern("X"))}), st);
  CHECK(db.constraint_count() == 0);
}

TEST_SUITE_END();
