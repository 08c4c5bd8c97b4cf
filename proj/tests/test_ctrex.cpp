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

namespace {

SymObj logbitp_obj(int n, SymObj data) {
  return SymObj::apply(syms().LOGBITP, {SymObj::concrete(Value::integer(n)), data});
}

}  // namespace

TEST_SUITE_BEGIN("ctrex");

TEST_CASE("the logbitp model translates to x = 16 with the install-bit rule") {
  EventDb db = test::db_with_files({"theories/bit-ctrex.gl"});
  AigMan aig;
  BvarDb bvars(0);
  SymObj x = SymObj::var(intern("X"));
  for (int n = 0; n < 5; ++n) bvars.lookup_or_add(aig, logbitp_obj(n, x));
  BoolEnv model;
  model.set(4, true);  // (logbitp 0..3 x) = nil, (logbitp 4 x) = t
  Assignment asg = model_to_assignment(model, bvars, aig, {}, {intern("X")},
                                       db.ctrex_rules(), db);
  CHECK(print_value(asg.value_of(intern("X"))) == "16");
  CHECK(asg.unresolved.empty());
}

TEST_CASE("without rules the variable stays nil: a false counterexample") {
  EventDb db = make_base_db();
  AigMan aig;
  BvarDb bvars(0);
  SymObj x = SymObj::var(intern("X"));
  for (int n = 0; n < 5; ++n) bvars.lookup_or_add(aig, logbitp_obj(n, x));
  BoolEnv model;
  model.set(4, true);
  Assignment asg =
      model_to_assignment(model, bvars, aig, {}, {intern("X")}, db.ctrex_rules(), db);
  CHECK(asg.value_of(intern("X")).is_nil());
  CHECK(asg.unresolved.size() == 5);
}

TEST_CASE("rules chain through nested accessors: (logbitp 4 (g :fld x)) = t") {
  EventDb db = test::db_with_files({"theories/bit-ctrex.gl", "theories/records.gl"});
  AigMan aig;
  BvarDb bvars(0);
  SymObj x = SymObj::var(intern("X"));
  SymObj gfld = SymObj::apply(intern("G"), {SymObj::concrete(Value::symbol(":FLD")), x});
  bvars.lookup_or_add(aig, logbitp_obj(4, gfld));
  BoolEnv model;
  model.set(0, true);
  Assignment asg =
      model_to_assignment(model, bvars, aig, {}, {intern("X")}, db.ctrex_rules(), db);
  CHECK(print_value(asg.value_of(intern("X"))) == "((:FLD . 16))");
  // the provenance shows the two-step resolution
  REQUIRE(asg.provenance.size() >= 2);
}

TEST_CASE("records rule alone: ((g k x) v) assigns via (s k v x)") {
  EventDb db = test::db_with_files({"theories/records.gl"});
  AigMan aig;
  BvarDb bvars(0);
  SymObj x = SymObj::var(intern("X"));
  SymObj gfld = SymObj::apply(intern("G"), {SymObj::concrete(Value::symbol(":A")), x});
  bvars.lookup_or_add(aig, gfld);
  BoolEnv model;
  model.set(0, true);
  Assignment asg =
      model_to_assignment(model, bvars, aig, {}, {intern("X")}, db.ctrex_rules(), db);
  // (g :a x) = t resolves to x := (s :a t nil) = ((:A . T))
  CHECK(print_value(asg.value_of(intern("X"))) == "((:A . T))");
}

TEST_CASE("a direct variable equation sets the variable without consulting rules") {
  EventDb db = make_base_db();
  Assignment asg;
  asg.vars[intern("X")] = Value::nil();
  apply_ctrex_rules(PendingEq{Term::var(intern("X")), Value::integer(7)}, asg,
                    db.ctrex_rules(), db, 10);
  CHECK(print_value(asg.value_of(intern("X"))) == "7");
  CHECK(asg.unresolved.empty());
}

TEST_CASE("fuel exhaustion logs instead of looping") {
  // Each step peels one f, but the nest is deeper than the fuel.
  EventDb db = test::db_with("(def-glcp-ctrex-rewrite ((f x) v) (x v))\n"
                             "(defun f (x) x)");
  Term eq = Term::var(intern("X"));
  for (int i = 0; i < 30; ++i) eq = Term::app(intern("F"), {eq});
  Assignment asg;
  asg.vars[intern("X")] = Value::nil();
  apply_ctrex_rules(PendingEq{eq, Value::t()}, asg, db.ctrex_rules(), db, 10);
  REQUIRE(!asg.unresolved.empty());
  CHECK(asg.unresolved.back().find("fuel") != std::string::npos);
  CHECK(asg.value_of(intern("X")).is_nil());  // never reached the variable
}

TEST_CASE("later updates win and determinism holds") {
  EventDb db = test::db_with_files({"theories/bit-ctrex.gl"});
  AigMan aig;
  BvarDb bvars(0);
  SymObj x = SymObj::var(intern("X"));
  for (int n = 0; n < 3; ++n) bvars.lookup_or_add(aig, logbitp_obj(n, x));
  BoolEnv model;
  model.set(0, true);
  model.set(1, true);
  model.set(2, false);
  Assignment a1 =
      model_to_assignment(model, bvars, aig, {}, {intern("X")}, db.ctrex_rules(), db);
  Assignment a2 =
      model_to_assignment(model, bvars, aig, {}, {intern("X")}, db.ctrex_rules(), db);
  CHECK(print_value(a1.value_of(intern("X"))) == "3");
  CHECK(Value::equal(a1.value_of(intern("X")), a2.value_of(intern("X"))));
}

TEST_CASE("rendering is exact on var/concrete-leaved entries") {
  EventDb db = make_base_db();
  AigMan aig;
  std::mt19937_64 rng(17);
  SymObj x = SymObj::var(intern("X"));
  std::vector<SymObj> entries = {
      logbitp_obj(3, x),
      SymObj::apply(intern("G"), {SymObj::concrete(Value::symbol(":A")), x}),
      SymObj::apply(syms().EQUAL,
                    {SymObj::concrete(Value::integer(0)),
                     SymObj::apply(syms().ASH, {x, SymObj::concrete(Value::integer(-1))})}),
  };
  for (const SymObj& e : entries) {
    Term t = render_entry(e, BoolEnv{}, aig);
    for (int i = 0; i < 50; ++i) {
      SymEnv env;
      env.vars[intern("X")] = test::random_value(rng);
      Value via_term = eval_term(t, env.vars, db);
      Value via_obj = sym_eval(e, env, aig, db);
      CHECK(Value::equal(via_term, via_obj));
    }
  }
}

TEST_CASE("shape-spec bits decode directly and Bool/Int leaves render fixed") {
  EventDb db = test::db_with_files({"theories/bit-ctrex.gl"});
  AigMan aig;
  GBindings specs = parse_g_bindings(test::vparse("((a (g-int 0 1 4)))"));
  BvarDb bvars(4);
  // an entry whose data argument is the shape-spec integer
  SymObj aobj = spec_to_sobj(specs[0].second, aig);
  bvars.lookup_or_add(aig, logbitp_obj(0, aobj));
  BoolEnv model;
  model.set(1, true);  // a = 2
  model.set(4, false);
  Assignment asg = model_to_assignment(model, bvars, aig, specs,
                                       {intern("A")}, db.ctrex_rules(), db);
  CHECK(print_value(asg.value_of(intern("A"))) == "2");
}

TEST_CASE("verify_ctrex separates real from false candidates") {
  EventDb db = make_base_db();
  AigMan aig;
  BvarDb bvars(0);
  Term hyp = tparse("t");
  Term concl = tparse("(equal (- (logext '5 (- (loghead '5 x)))) (logext '5 (loghead '5 x)))");
  BoolEnv model;

  Assignment real;
  real.vars[intern("X")] = Value::integer(16);
  CtrexVerdict v1 = verify_ctrex(real, hyp, concl, bvars, model, aig, db);
  CHECK(v1.real);

  Assignment fake;
  fake.vars[intern("X")] = Value::nil();
  CtrexVerdict v2 = verify_ctrex(fake, hyp, concl, bvars, model, aig, db);
  CHECK(!v2.real);
  CHECK(v2.reason.find("conclusion") != std::string::npos);

  // hypothesis violations are reported as false counterexamples
  Term hyp2 = tparse("(integerp x)");
  CtrexVerdict v3 = verify_ctrex(fake, hyp2, concl, bvars, model, aig, db);
  CHECK(!v3.real);
  CHECK(v3.reason.find("hypothesis") != std::string::npos);
}

TEST_CASE("verify_ctrex diagnoses model disagreements") {
  EventDb db = make_base_db();
  AigMan aig;
  BvarDb bvars(0);
  SymObj x = SymObj::var(intern("X"));
  bvars.lookup_or_add(aig, SymObj::apply(syms().INTEGERP, {x}));
  BoolEnv model;  // model says (integerp x) = nil
  Assignment asg;
  asg.vars[intern("X")] = Value::integer(12);  // but the candidate makes it t
  CtrexVerdict v = verify_ctrex(asg, tparse("t"), tparse("(equal x x)"), bvars, model,
                                aig, db);
  CHECK(!v.real);
  REQUIRE(v.disagreements.size() == 1);
  CHECK(v.disagreements[0].index == 0);
}

TEST_SUITE_END();
