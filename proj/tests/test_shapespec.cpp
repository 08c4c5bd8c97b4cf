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
using termblast::test::vparse;

TEST_SUITE_BEGIN("shapespec");

TEST_CASE("g-int generates the claimed input bits") {
  AigMan aig;
  ShapeSpec s = ShapeSpec::g_int(0, 1, 10);
  SymObj o = spec_to_sobj(s, aig);
  REQUIRE(o.is(SymObj::Kind::Int));
  REQUIRE(o.bits().size() == 10);
  for (uint32_t i = 0; i < 10; ++i) CHECK(o.bits()[i] == aig.input(i));
  // strides claim spread-out indices
  ShapeSpec s2 = ShapeSpec::g_int(20, 2, 3);
  auto idx = s2.indices();
  CHECK(idx == std::vector<uint32_t>{20, 22, 24});
}

TEST_CASE("g-var and nil bindings produce term-level variables") {
  AigMan aig;
  SymObj o = spec_to_sobj(ShapeSpec::g_var(intern("REST-OF-ST")), aig);
  REQUIRE(o.is(SymObj::Kind::Var));
  CHECK(symbol_name(o.var_name()) == "REST-OF-ST");
  CHECK(parse_g_bindings(Value::nil()).empty());
}

TEST_CASE("the paper-style backquoted g-bindings form parses") {
  Value form = vparse(
      "`((st ,(gl::g-call 's (list :a (gl::g-int 0 1 10)"
      " (gl::g-call 's (list :b (gl::g-int 10 1 10) (gl::g-var 'rest-of-st))"
      " '(lambda (x) (s-inverse ':b x))))"
      " '(lambda (x) (s-inverse ':a x)))))");
  GBindings gb = parse_g_bindings(form);
  REQUIRE(gb.size() == 1);
  CHECK(symbol_name(gb[0].first) == "ST");
  const ShapeSpec& spec = gb[0].second;
  REQUIRE(spec.kind() == ShapeSpec::Kind::GCall);
  CHECK(symbol_name(spec.fn()) == "S");
  REQUIRE(spec.args().size() == 3);
  CHECK(spec.args()[0].kind() == ShapeSpec::Kind::Concrete);
  CHECK(spec.args()[1].kind() == ShapeSpec::Kind::GInt);
  CHECK(spec.args()[2].kind() == ShapeSpec::Kind::GCall);
  CHECK(spec.inverse().is_lambda());
  CHECK(spec.contains_gcall());
  auto idx = spec.indices();
  CHECK(idx.size() == 20);
}

TEST_CASE("aliased Boolean indices are rejected") {
  CHECK_THROWS_AS(parse_g_bindings(vparse("((a (g-int 0 1 4)) (b (g-boolean 2)))")),
                  ShapeSpecError);
}

TEST_CASE("obj_in_range: 10-bit signed covers -512..511") {
  ShapeSpec s = ShapeSpec::g_int(0, 1, 10);
  // Independent range oracle: decode every extreme via two's complement.
  CHECK(obj_in_range(s, Value::integer(511)));
  CHECK(obj_in_range(s, Value::integer(-512)));
  CHECK(!obj_in_range(s, Value::integer(512)));
  CHECK(!obj_in_range(s, Value::integer(-513)));
  CHECK(!obj_in_range(s, Value::t()));
  CHECK(obj_in_range(ShapeSpec::g_var(intern("V")), vparse("(some . structure)")));
  CHECK(!obj_in_range(ShapeSpec::g_boolean(3), Value::integer(7)));
  CHECK(obj_in_range(ShapeSpec::g_boolean(3), Value::nil()));
  CHECK_THROWS_AS(
      obj_in_range(ShapeSpec::g_call(intern("S"), {}, ShapeSpec::Inverse{intern("F"), {}, {}}),
                   Value::nil()),
      ShapeSpecError);
}

TEST_CASE("witness soundness: in-range targets decode into evaluating environments") {
  EventDb db = make_base_db();
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    // random GCall-free spec
    std::function<ShapeSpec(int, uint32_t&)> gen = [&](int depth,
                                                       uint32_t& next) -> ShapeSpec {
      std::uniform_int_distribution<int> pick(0, depth > 2 ? 2 : 4);
      switch (pick(rng)) {
        case 0: {
          uint32_t idx = next;
          next += 1;
          return ShapeSpec::g_boolean(idx);
        }
        case 1: {
          uint32_t idx = next;
          std::uniform_int_distribution<int> nd(1, 8);
          uint32_t n = nd(rng);
          next += n;
          return ShapeSpec::g_int(idx, 1, n);
        }
        case 2:
          return ShapeSpec::g_var(intern("V" + std::to_string(next)));
        case 3:
          return ShapeSpec::concrete(test::random_value(rng));
        default: {
          ShapeSpec car = gen(depth + 1, next);
          ShapeSpec cdr = gen(depth + 1, next);
          return ShapeSpec::s_cons(std::move(car), std::move(cdr));
        }
      }
    };
    uint32_t next = 0;
    ShapeSpec spec = gen(0, next);
    // random in-range target: evaluate the spec under a random env first
    AigMan aig;
    SymObj obj = spec_to_sobj(spec, aig);
    SymEnv env;
    for (uint32_t i = 0; i < next; ++i) env.boolean.set(i, rng() & 1);
    for (uint32_t i = 0; i < next; ++i)
      env.vars[intern("V" + std::to_string(i))] = test::random_value(rng);
    Value target = sym_eval(obj, env, aig, db);
    REQUIRE(obj_in_range(spec, target));
    // the constructive witness reproduces the target
    BoolEnv bits;
    ValueBindings vars;
    REQUIRE(spec_witness(spec, target, bits, vars));
    SymEnv wenv;
    wenv.boolean = bits;
    wenv.vars = vars;
    CHECK(Value::equal(sym_eval(obj, wenv, aig, db), target));
  }
}

TEST_CASE("rendered specs round-trip") {
  ShapeSpec s = ShapeSpec::s_cons(ShapeSpec::g_int(0, 1, 4),
                                  ShapeSpec::s_cons(ShapeSpec::g_boolean(4),
                                                    ShapeSpec::g_var(intern("REST"))));
  Value r = render_spec(s);
  ShapeSpec back = parse_rendered_spec(r);
  CHECK(Value::equal(render_spec(back), r));
}

TEST_CASE("oblig_term: pure g-int gives a single in-range conjunct") {
  ShapeSpec s = ShapeSpec::g_int(0, 1, 4);
  Term t = oblig_term(s, Term::var(intern("X")));
  CHECK(print_term(t) ==
        "(SHAPE-SPEC-OBJ-IN-RANGE (QUOTE (:G-INTEGER 0 1 4)) X)");
  EventDb db = make_base_db();
  ValueBindings env{{intern("X"), Value::integer(7)}};
  CHECK(eval_term(t, env, db).truthy());
  env[intern("X")] = Value::integer(200);  // outside the 4-bit signed range
  CHECK(!eval_term(t, env, db).truthy());
}

TEST_CASE("oblig_term: g-call emits the two-part obligation") {
  EventDb db = test::db_with("(defun s-inverse (key obj) (list key (g key obj) obj))");
  Value form = vparse(
      "((st (gl::g-call 's (list :a (gl::g-int 0 1 10) (gl::g-var 'rest))"
      " '(lambda (x) (s-inverse ':a x)))))");
  GBindings gb = parse_g_bindings(form);
  Term oblig = oblig_term(gb[0].second, Term::var(intern("ST")));
  std::string printed = print_term(oblig);
  // part 1: the call rebuilt from inverse components equals the target
  CHECK(printed.find("(EQUAL (S (NTH 0 INV-ARGS-0) (NTH 1 INV-ARGS-0) (NTH 2 INV-ARGS-0)) ST)")
        != std::string::npos);
  // part 2: recursive coverage of the argument specs
  CHECK(printed.find("(SHAPE-SPEC-OBJ-IN-RANGE (QUOTE (:G-INTEGER 0 1 10)) (NTH 1 INV-ARGS-0))")
        != std::string::npos);
  CHECK(printed.find("(:G-VAR . REST)") != std::string::npos);
  // evaluation: a 9-bit field record is covered
  ValueBindings env{{intern("ST"), test::veval("(s ':a '100 (s ':z 'whatever 'nil))", db)}};
  CHECK(eval_term(oblig, env, db).truthy());
  // a 10-bit-signed-violating field is not
  ValueBindings env2{{intern("ST"), test::veval("(s ':a '5000 'nil)", db)}};
  CHECK(!eval_term(oblig, env2, db).truthy());
}

TEST_CASE("g-call over all-g-var arguments: only the equality is substantive") {
  EventDb db = test::db_with("(defun mk (a b) (cons a b))\n"
                             "(defun mk-inverse (x) (list (car x) (cdr x)))");
  Value form = vparse("((p (g-call 'mk (list (g-var 'a) (g-var 'b)) 'mk-inverse)))");
  GBindings gb = parse_g_bindings(form);
  Term oblig = oblig_term(gb[0].second, Term::var(intern("P")));
  // every cons is covered (g-var coverage is trivially true)
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    ValueBindings env{
        {intern("P"), Value::cons(test::random_value(rng), test::random_value(rng))}};
    CHECK(eval_term(oblig, env, db).truthy());
  }
}

TEST_CASE("check_oblig_on") {
  EventDb db = test::db_with("(defun s-inverse (key obj) (list key (g key obj) obj))");
  Value form = vparse(
      "((st (gl::g-call 's (list :a (gl::g-int 0 1 10)"
      " (gl::g-call 's (list :b (gl::g-int 10 1 10) (gl::g-var 'rest-of-st))"
      " '(lambda (x) (s-inverse ':b x))))"
      " '(lambda (x) (s-inverse ':a x)))))");
  GBindings gb = parse_g_bindings(form);

  SUBCASE("passes on sampled records with 9-bit fields") {
    std::mt19937_64 rng(1);
    std::vector<ValueBindings> samples;
    for (int i = 0; i < 64; ++i) {
      std::uniform_int_distribution<long> d(0, 511);
      ValueBindings s;
      ValueBindings mk{{intern("A"), Value::integer(d(rng))},
                       {intern("B"), Value::integer(d(rng))}};
      s[intern("ST")] = eval_term(test::tparse("(s ':a a (s ':b b 'nil))"), mk, db);
      samples.push_back(std::move(s));
    }
    ObligSampleReport r = check_oblig_on(gb[0].second, intern("ST"), samples, db);
    CHECK(r.total == 64);
    CHECK(r.passed == 64);
    CHECK(r.failures.empty());
  }

  SUBCASE("reports genuine coverage gaps") {
    // hyp (unsigned-byte-p 8 x) admits 200, but a 4-bit spec cannot cover it
    ShapeSpec narrow = ShapeSpec::g_int(0, 1, 4);
    std::vector<ValueBindings> samples{{{intern("X"), Value::integer(200)}}};
    ObligSampleReport r = check_oblig_on(narrow, intern("X"), samples, db);
    CHECK(r.total == 1);
    CHECK(r.passed == 0);
    REQUIRE(r.failures.size() == 1);
  }

  SUBCASE("empty sample list passes vacuously with a warning") {
    ObligSampleReport r = check_oblig_on(gb[0].second, intern("ST"), {}, db);
    CHECK(r.vacuous);
    CHECK(r.total == 0);
  }
}

TEST_CASE("spec_decode reads values straight from model bits") {
  ShapeSpec s = ShapeSpec::s_cons(ShapeSpec::g_int(0, 1, 5), ShapeSpec::g_boolean(5));
  BoolEnv model;
  model.set(4, true);  // bits 0..4 encode -16
  model.set(5, true);
  auto v = spec_decode(s, model);
  REQUIRE(v.has_value());
  CHECK(print_value(*v) == "(-16 . T)");
  // g-var parts make decoding unavailable
  ShapeSpec s2 = ShapeSpec::s_cons(ShapeSpec::g_int(0, 1, 5),
                                   ShapeSpec::g_var(intern("REST")));
  CHECK(!spec_decode(s2, model).has_value());
}

TEST_SUITE_END();
