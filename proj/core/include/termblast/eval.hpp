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

#pragma once

#include <map>
#include <random>

#include "termblast/events.hpp"
#include "termblast/term.hpp"

namespace termblast {

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

using ValueBindings = std::map<SymbolId, Value>;

/// Evaluation context: recursion budget, optional RNG for sampling
/// natives, and the syntaxp-reflection switch (see eval_term).
class EvalCtx {
 public:
  explicit EvalCtx(const EventDb& db) : db_(db) {}

  const EventDb& db() const { return db_; }

  int depth_limit = 10000;
  bool syntaxp_reflection = false;
  std::mt19937_64* rng = nullptr;

  int depth = 0;

 private:
  const EventDb& db_;
};

/// Call-by-value, guard-free evaluation. `if` is lazy in its branches;
/// primitives coerce ill-typed inputs per their logical definitions (car
/// of a non-cons is nil, arithmetic treats non-integers as 0, < compares
/// integer fixes). Throws EvalError for unbound variables, undefined
/// functions, and exceeded recursion depth.
///
/// With ctx.syntaxp_reflection set, arguments of the form (:concrete . v)
/// are unwrapped to v before applying any function outside the small set
/// of reflection-aware accessors (consp, car, cdr, equal, eq, not, tag,
/// general-concretep, general-concrete-obj, g-apply->fn, g-apply->args).
/// This is how syntaxp hypotheses see symbolic-object syntax.
Value eval_term(const Term& t, const ValueBindings& bindings, EvalCtx& ctx);

Value eval_term(const Term& t, const ValueBindings& bindings, const EventDb& db,
                int depth_limit = 10000);

/// Applies a named function (primitive, native, or defined) to values.
Value eval_apply(SymbolId fn, const std::vector<Value>& args, EvalCtx& ctx);

/// True iff fn is one of the fixed core primitives.
bool core_primitive_p(SymbolId fn);

}  // namespace termblast
