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

#include <memory>

#include "termblast/sobj.hpp"

namespace termblast {

class ShapeSpecError : public std::runtime_error {
 public:
  explicit ShapeSpecError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape specifier: the symbolic-object skeleton a theorem variable is
/// bound to. GInt(start, by, n) claims Boolean input indices start,
/// start+by, ..., start+(n-1)*by as the two's-complement bits of an n-bit
/// integer. GCall carries an inverse function (symbol or unary lambda)
/// used to state its coverage obligation.
class ShapeSpec {
 public:
  enum class Kind : uint8_t { Concrete, GBoolean, GInt, SCons, GVar, GCall };

  static ShapeSpec concrete(Value v);
  static ShapeSpec g_boolean(uint32_t index);
  static ShapeSpec g_int(uint32_t start, uint32_t by, uint32_t n);
  static ShapeSpec s_cons(ShapeSpec car, ShapeSpec cdr);
  static ShapeSpec g_var(SymbolId name);
  struct Inverse {
    SymbolId fn_symbol = 0;          // when lambda is invalid
    Term lambda;                     // unary lambda body form when valid
    std::vector<SymbolId> formals;   // lambda formals (size 1)
    bool is_lambda() const { return lambda.valid(); }
  };
  static ShapeSpec g_call(SymbolId fn, std::vector<ShapeSpec> args, Inverse inverse);

  Kind kind() const;
  const Value& value() const;
  uint32_t index() const;  // GBoolean
  uint32_t start() const;  // GInt
  uint32_t by() const;
  uint32_t n() const;
  const ShapeSpec& car() const;
  const ShapeSpec& cdr() const;
  SymbolId var_name() const;
  SymbolId fn() const;
  const std::vector<ShapeSpec>& args() const;
  const Inverse& inverse() const;

  bool contains_gcall() const;
  /// All Boolean indices claimed by this spec, in order of appearance.
  std::vector<uint32_t> indices() const;

 private:
  struct Node;
  explicit ShapeSpec(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// One theorem's bindings: variable -> spec, in declaration order.
using GBindings = std::vector<std::pair<SymbolId, ShapeSpec>>;

/// Parses a :g-bindings form: a list of (var spec-expr) pairs where
/// spec-expr is the constructor DSL — (g-int s b n), (g-boolean i),
/// (g-var 'name), (g-call 'fn (list args...) 'inverse), (cons a b),
/// (list ...), quoted or self-quoting constants. Checks index
/// distinctness across the whole form.
GBindings parse_g_bindings(const Value& form);

/// The symbolic object a spec generates (GCall becomes a term-level
/// function call object; input nodes are created in aig).
SymObj spec_to_sobj(const ShapeSpec& s, AigMan& aig);

/// True iff some environment makes the spec's object evaluate to target.
/// The spec must be GCall-free (use oblig_term for calls). GInt covers
/// the n-bit signed range.
bool obj_in_range(const ShapeSpec& s, const Value& target);

/// Renders a spec as a Value (used in obligation terms and reports) and
/// parses it back.
Value render_spec(const ShapeSpec& s);
ShapeSpec parse_rendered_spec(const Value& v);

/// The coverage obligation term for binding `target` (a term denoting the
/// object to cover) to s. Non-GCall specs yield a single
/// (shape-spec-obj-in-range 'spec target) conjunct; a GCall yields the
/// inverse-application equality plus recursive obligations for its
/// arguments.
Term oblig_term(const ShapeSpec& s, const Term& target);

/// Constructs the witness environment for a GCall-free spec and an
/// in-range target: fills bits/vars so the spec's object evaluates to
/// target. Returns false when the target is not covered.
bool spec_witness(const ShapeSpec& s, const Value& target, BoolEnv& bits,
                  ValueBindings& vars);

/// Decodes a spec directly under a Boolean model (the shape-specifier
/// half of counterexample translation). GVar/GCall parts make the result
/// unavailable.
std::optional<Value> spec_decode(const ShapeSpec& s, const BoolEnv& model);

struct ObligSampleReport {
  size_t total = 0;
  size_t passed = 0;
  bool vacuous = false;
  std::vector<std::string> failures;  // one line per failing/erroring sample
};

/// Evaluates the obligation term on each sample assignment (each must
/// already satisfy the theorem hypothesis). A failing sample is a genuine
/// coverage gap. An empty sample list passes vacuously with a warning.
ObligSampleReport check_oblig_on(const ShapeSpec& s, SymbolId var,
                                 const std::vector<ValueBindings>& samples,
                                 const EventDb& defs);

/// Registers the shape-spec-obj-in-range native used by obligation terms.
void register_shapespec_natives(EventDb& db);

}  // namespace termblast
