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
using termblast::test::random_value;
using termblast::test::vparse;

TEST_SUITE_BEGIN("value");

TEST_CASE("nil is false, the empty list, and a symbol") {
  CHECK(Value::nil().is_symbol());
  CHECK(!Value::nil().truthy());
  CHECK(Value::nil().is_boolean());
  CHECK(Value::t().truthy());
  CHECK(Value::integer(0).truthy());  // only nil is false
  CHECK(Value::string("").truthy());
}

TEST_CASE("printing matches reader syntax") {
  Value record = list_of({Value::cons(Value::symbol(":FLD"), Value::integer(16))});
  CHECK(print_value(record) == "((:FLD . 16))");
  CHECK(print_value(Value::nil()) == "NIL");
  CHECK(print_value(list_of({Value::integer(1), Value::integer(2)})) == "(1 2)");
  CHECK(print_value(Value::cons(Value::integer(1), Value::integer(2))) == "(1 . 2)");
}

TEST_CASE("reader round trip on random values") {
  std::mt19937_64 rng(20260811);
  for (int i = 0; i < 500; ++i) {
    Value v = random_value(rng);
    Value back = vparse(print_value(v));
    CAPTURE(print_value(v));
    CHECK(Value::equal(v, back));
  }
}

TEST_CASE("structural equality and hashing agree") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    Value a = random_value(rng);
    Value b = vparse(print_value(a));
    CHECK(Value::equal(a, b));
    CHECK(a.hash() == b.hash());
  }
}

TEST_CASE("<< is a total order: integers < symbols < strings < conses") {
  Value i = Value::integer(5);
  Value s = Value::symbol("FOO");
  Value str = Value::string("foo");
  Value c = Value::cons(i, i);
  CHECK(Value::order(i, s) < 0);
  CHECK(Value::order(s, str) < 0);
  CHECK(Value::order(str, c) < 0);
  CHECK(Value::order(Value::integer(-3), Value::integer(4)) < 0);
  CHECK(Value::order(Value::symbol(":A"), Value::symbol(":B")) < 0);

  std::mt19937_64 rng(7);
  for (int i2 = 0; i2 < 300; ++i2) {
    Value a = random_value(rng);
    Value b = random_value(rng);
    Value d = random_value(rng);
    int ab = Value::order(a, b);
    int ba = Value::order(b, a);
    CHECK(((ab < 0) == (ba > 0)));
    CHECK(((ab == 0) == (ba == 0)));
    CHECK(((ab == 0) == Value::equal(a, b)));
    // transitivity spot check
    if (ab <= 0 && Value::order(b, d) <= 0) CHECK(Value::order(a, d) <= 0);
  }
}

TEST_CASE("escaped symbols survive the round trip") {
  Value lower = Value::symbol("mixedCase");
  CHECK(print_value(lower) == "|mixedCase|");
  CHECK(Value::equal(vparse(print_value(lower)), lower));
  Value weird = Value::symbol("has space|bar");
  CHECK(Value::equal(vparse(print_value(weird)), weird));
  // A bare `::` would read back with its prefix stripped.
  Value pkgish = Value::symbol("A::B");
  CHECK(print_value(pkgish) == "|A::B|");
  CHECK(Value::equal(vparse(print_value(pkgish)), pkgish));
  // A symbol that looks like a number must not read back as one.
  Value numish = Value::symbol("123");
  Value back = vparse(print_value(numish));
  CHECK(back.is_symbol());
  CHECK(Value::equal(back, numish));
}

TEST_CASE("primitive totality: every primitive returns a value on random inputs") {
  EventDb db = make_base_db();
  const Syms& S = syms();
  std::vector<std::pair<SymbolId, size_t>> prims = {
      {S.CONS, 2},       {S.CAR, 1},          {S.CDR, 1},    {S.CONSP, 1},
      {S.EQUAL, 2},      {S.NOT, 1},          {S.INTEGERP, 1}, {S.SYMBOLP, 1},
      {S.BOOLEANP, 1},   {S.STRINGP, 1},      {S.BINARY_PLUS, 2},
      {S.BINARY_STAR, 2}, {S.UNARY_MINUS, 1}, {S.LESS, 2},   {S.FLOOR, 2},
      {S.MOD, 2},        {S.ACL2_NUMBERP, 1}, {S.LLORDER, 2}};
  std::mt19937_64 rng(99);
  EvalCtx ctx(db);
  for (int i = 0; i < 400; ++i) {
    for (const auto& [fn, arity] : prims) {
      std::vector<Value> args;
      for (size_t k = 0; k < arity; ++k) args.push_back(random_value(rng));
      CHECK_NOTHROW(eval_apply(fn, args, ctx));
    }
  }
}

TEST_CASE("guard-free coercions") {
  EventDb db = make_base_db();
  EvalCtx ctx(db);
  const Syms& S = syms();
  CHECK(eval_apply(S.CAR, {Value::integer(5)}, ctx).is_nil());
  CHECK(eval_apply(S.CDR, {Value::symbol("FOO")}, ctx).is_nil());
  CHECK(Value::equal(eval_apply(S.BINARY_PLUS, {Value::t(), Value::integer(3)}, ctx),
                     Value::integer(3)));
  CHECK(Value::equal(eval_apply(S.UNARY_MINUS, {Value::string("x")}, ctx),
                     Value::integer(0)));
  // < compares integer fixes: (< t 5) fixes t to 0.
  CHECK(eval_apply(S.LESS, {Value::t(), Value::integer(5)}, ctx).truthy());
  CHECK(Value::equal(eval_apply(S.FLOOR, {Value::integer(7), Value::integer(0)}, ctx),
                     Value::integer(0)));
  CHECK(Value::equal(eval_apply(S.MOD, {Value::integer(-7), Value::integer(2)}, ctx),
                     Value::integer(1)));
}

TEST_SUITE_END();
