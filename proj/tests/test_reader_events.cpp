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
using termblast::test::vparse;

TEST_SUITE_BEGIN("reader");

TEST_CASE("quote sugar expands") {
  Value v = vparse("'x");
  CHECK(print_value(v) == "(QUOTE X)");
}

TEST_CASE("package prefixes strip, keywords keep their colon") {
  CHECK(Value::equal(vparse("gl::g-int"), Value::symbol("G-INT")));
  CHECK(Value::equal(vparse("bitops::install-bit"), Value::symbol("INSTALL-BIT")));
  CHECK(Value::equal(vparse(":concrete-only"), Value::symbol(":CONCRETE-ONLY")));
  CHECK(Value::equal(vparse("1-"), Value::symbol("1-")));  // not an integer
  CHECK(vparse("-12").is_integer());
}

TEST_CASE("backquote and comma are transparent") {
  Value v = vparse("`((st ,(gl::g-int 0 1 10)))");
  CHECK(print_value(v) == "((ST (G-INT 0 1 10)))");
}

TEST_CASE("lex errors carry positions") {
  Reader r("(foo\n  \"unterminated", "f.gl");
  CHECK_THROWS_WITH_AS(r.next(), doctest::Contains("f.gl:2"), ParseError);
}

TEST_CASE("dotted pairs and comments") {
  CHECK(print_value(vparse("(a . b) ; trailing comment")) == "(A . B)");
  CHECK(print_value(vparse("(1 2 . 3)")) == "(1 2 . 3)");
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("events");

TEST_CASE("defun parses to a definition event") {
  auto events = parse_events("(defun nfix (n) (if (integerp n) (if (< n '0) '0 n) '0))");
  REQUIRE(events.size() == 1);
  const auto* d = std::get_if<Defn>(&events[0]);
  REQUIRE(d != nullptr);
  CHECK(symbol_name(d->name) == "NFIX");
  CHECK(d->formals.size() == 1);
}

TEST_CASE("gl-set-uninterpreted modes") {
  auto events = parse_events("(gl::gl-set-uninterpreted g :concrete-only)\n"
                             "(gl-set-uninterpreted s)\n"
                             "(gl-set-uninterpreted h nil)");
  REQUIRE(events.size() == 3);
  CHECK(std::get<UninterpEvent>(events[0]).mode == UninterpMode::ConcreteOnly);
  CHECK(std::get<UninterpEvent>(events[1]).mode == UninterpMode::Uninterpreted);
  CHECK(std::get<UninterpEvent>(events[2]).mode == UninterpMode::Interpreted);
}

TEST_CASE("smallest theorem event") {
  auto events = parse_events("(def-gl-thm foo :hyp t :concl (equal x x) :g-bindings nil)");
  REQUIRE(events.size() == 1);
  const auto& t = std::get<TheoremEvent>(events[0]);
  CHECK(symbol_name(t.name) == "FOO");
  CHECK(t.hyp.kind() == Term::Kind::Quote);
  CHECK(t.hyp.quoted().is_t());
  CHECK(t.concl.kind() == Term::Kind::App);
}

TEST_CASE("unknown event heads are rejected with location") {
  CHECK_THROWS_WITH_AS(parse_events("(defthing foo)", "bad.gl"),
                       doctest::Contains("bad.gl:1"), EventError);
}

TEST_CASE("rewrite rules index under the lhs head and keep order") {
  EventDb db = test::db_with_files({"theories/records.gl"});
  const Syms& S = syms();
  SymbolId g = intern("G");
  const auto& rules = db.rewrites_for(g);
  REQUIRE(rules.size() == 1);
  CHECK(symbol_name(rules[0].name) == "G-OF-S-CASESPLIT");
  const auto& srules = db.rewrites_for(intern("S"));
  REQUIRE(srules.size() == 1);
  CHECK(symbol_name(srules[0].name) == "S-OF-S-NORMALIZE");
  CHECK(srules[0].hyps.size() == 1);
  CHECK(srules[0].hyps[0].syntaxp);
  // equality rules, in declaration order
  const auto& eqrules = db.rewrites_for(S.EQUAL);
  REQUIRE(eqrules.size() == 2);
  CHECK(symbol_name(eqrules[0].name) == "EQUAL-OF-S");
  CHECK(symbol_name(eqrules[1].name) == "EQUAL-OF-S-2");
  // branch merge indexed under s
  CHECK(db.merges_for(intern("S")).size() == 1);
  // undefined function: empty lists
  CHECK(db.rewrites_for(intern("NO-SUCH-FN")).empty());
  CHECK(db.merges_for(intern("NO-SUCH-FN")).empty());
  CHECK(db.constraints_for(intern("NO-SUCH-FN")).empty());
}

TEST_CASE("constraint rules are retrievable under any binding pattern head") {
  EventDb db = test::db_with_files({"theories/bit-constraints.gl"});
  CHECK(db.constraints_for(intern("LOGBITP")).size() == 1);
  CHECK(db.constraints_for(intern("INTEGERP")).size() == 1);
}

TEST_CASE("rule invariants are enforced") {
  // rhs free variable not bound on the lhs
  CHECK_THROWS_AS(test::db_with("(def-gl-rewrite bad (equal (f x) (g x y)))"),
                  EventError);
  // hypothesis with an escaped variable
  CHECK_THROWS_AS(
      test::db_with("(def-gl-rewrite bad (implies (consp z) (equal (f x) x)))"),
      EventError);
  // lhs must be an application, not a variable or quote head
  CHECK_THROWS_AS(test::db_with("(def-gl-rewrite bad (equal x x))"), EventError);
  CHECK_THROWS_AS(test::db_with("(def-gl-rewrite bad (equal (if a b c) b))"), EventError);
  // branch-merge shape: test and else must be distinct variables
  CHECK_THROWS_AS(
      test::db_with("(def-gl-branch-merge bad (equal (if c (f x) c) (f x)))"),
      EventError);
  // constraint binding vars must be used in the body
  CHECK_THROWS_AS(test::db_with("(def-gl-boolean-constraint bad"
                                " :bindings ((b0 (logbitp n x)) (b1 (integerp x)))"
                                " :body (implies b0 t))"),
                  EventError);
  // ctrex target must occur in the pattern
  CHECK_THROWS_AS(test::db_with("(def-glcp-ctrex-rewrite ((logbitp n i) v)"
                                " (q (install-bit n (bool->bit v) i)))"),
                  EventError);
}

TEST_CASE("defun redefinition replaces the body") {
  EventDb db = test::db_with("(defun f (x) x) (defun f (x) (cons x x))");
  Value v = test::veval("(f '3)", db);
  CHECK(print_value(v) == "(3 . 3)");
}

TEST_CASE("improper argument lists and non-symbol function positions are rejected") {
  CHECK_THROWS_AS(tparse("(f x . y)"), TermError);
  CHECK_THROWS_AS(tparse("((g) x)"), TermError);
  CHECK_THROWS_AS(tparse("(3 x)"), TermError);
  CHECK_THROWS_AS(tparse("(lambda (x) x)"), TermError);       // not applied
  CHECK_THROWS_AS(tparse("((lambda (x x) x) 1 2)"), TermError);  // dup formals
  CHECK_THROWS_AS(tparse("((lambda (x) x) 1 2)"), TermError);    // arity
}

TEST_SUITE_END();
