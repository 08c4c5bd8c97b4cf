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
#include <optional>

#include "termblast/aig.hpp"
#include "termblast/eval.hpp"
#include "termblast/term.hpp"

namespace termblast {

/// A symbolic object: a set of possible concrete values parameterized by
/// Boolean variables. Immutable and freely shared.
///
/// Kinds: Concrete(value), Bool(bfr), Int(two's-complement bit list,
/// LSB first, last bit = sign), Cons, Ite (test is a full SymObj),
/// Apply (term-level function call), Var (term-level free variable).
class SymObj {
 public:
  enum class Kind : uint8_t { Concrete, Bool, Int, Cons, Ite, Apply, Var };

  SymObj() = default;

  static SymObj concrete(Value v);
  static SymObj boolean(Bfr b);
  static SymObj integer(std::vector<Bfr> bits);  // bits nonempty
  static SymObj cons(SymObj car, SymObj cdr);
  static SymObj ite(SymObj test, SymObj then, SymObj els);
  static SymObj apply(SymbolId fn, std::vector<SymObj> args);
  static SymObj var(SymbolId name);

  bool valid() const { return n_ != nullptr; }
  Kind kind() const;
  bool is(Kind k) const { return valid() && kind() == k; }

  const Value& value() const;             // Concrete
  Bfr bfr() const;                        // Bool
  const std::vector<Bfr>& bits() const;   // Int
  const SymObj& car() const;              // Cons
  const SymObj& cdr() const;
  const SymObj& test() const;             // Ite
  const SymObj& then_branch() const;
  const SymObj& else_branch() const;
  SymbolId fn() const;                    // Apply
  const std::vector<SymObj>& args() const;
  SymbolId var_name() const;              // Var

  size_t hash() const;
  static bool equal(const SymObj& a, const SymObj& b);
  friend bool operator==(const SymObj& a, const SymObj& b) { return equal(a, b); }

 private:
  struct Node;
  explicit SymObj(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct SymObjHash {
  size_t operator()(const SymObj& o) const { return o.hash(); }
};

/// Environment for symbolic evaluation: Boolean inputs (default false)
/// and term-variable values (default nil).
struct SymEnv {
  BoolEnv boolean;
  ValueBindings vars;

  Value var_value(SymbolId name) const {
    auto it = vars.find(name);
    return it == vars.end() ? Value::nil() : it->second;
  }
};

/// Evaluates a symbolic object to the concrete Value it denotes under env.
Value sym_eval(const SymObj& o, const SymEnv& env, const AigMan& aig, EvalCtx& ctx);
Value sym_eval(const SymObj& o, const SymEnv& env, const AigMan& aig, const EventDb& db);

/// True iff o has exactly one possible value under all environments, by
/// syntactic criteria: Concrete, constant Bool, all-constant Int, Cons of
/// concretes. Ite/Apply/Var are never syntactically concrete.
bool general_concretep(const SymObj& o);
/// The value of a syntactically concrete object (caller must check).
Value general_concrete_obj(const SymObj& o);

/// Minimal-width two's-complement constant encoding of n.
std::vector<Bfr> encode_const_int(const mpz_class& n);
/// Decodes an evaluated bit list (LSB first, last bit = sign).
mpz_class decode_int_bits(const std::vector<bool>& bits);

using Substitution = std::map<SymbolId, SymObj>;

/// First-order matching of a term pattern against a symbolic object,
/// extending subst. Pattern variables bind (never overwrite — a repeated
/// variable must match an equal object); quotes match syntactically
/// concrete objects of equal value; an application of fn matches Apply of
/// the same fn argwise; `cons` patterns additionally match Cons objects
/// and concrete conses; `if` patterns match Ite objects. Anything else
/// fails. Returns false (leaving subst in a partial state) on failure.
bool unify(const Term& pattern, const SymObj& obj, Substitution& subst);

/// A rule right-hand side plus the substitution it should be interpreted
/// under; instantiation is lazy (the interpreter walks the term with the
/// substitution as its binding frame).
struct BoundTerm {
  Term term;
  Substitution subst;
};

/// Checks free vars of t are covered by subst and packages the pair.
BoundTerm instantiate(const Term& t, Substitution subst);

/// Reflection of a symbolic object as a Value, for syntaxp hypotheses:
/// syntactically concrete objects become (:concrete . value); other kinds
/// become tagged conses (:g-boolean), (:g-integer), (:g-cons a . d),
/// (:g-ite t a b), (:g-apply fn . args), (:g-var . name).
Value reflect(const SymObj& o);

/// Largest Boolean input variable mentioned by o (through Bool/Int parts).
std::optional<uint32_t> max_boolean_var(const SymObj& o, const AigMan& aig);

/// Debug rendering in tagged notation.
std::string sobj_to_string(const SymObj& o, const AigMan& aig);

}  // namespace termblast
