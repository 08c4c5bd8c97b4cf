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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "termblast/term.hpp"

namespace termblast {

struct Defn {
  SymbolId name;
  std::vector<SymbolId> formals;
  Term body;
};

enum class UninterpMode { Interpreted, Uninterpreted, ConcreteOnly };

struct UninterpEvent {
  SymbolId fn;
  UninterpMode mode;
};

enum class Equiv { Equal, Iff };

struct RuleHyp {
  bool syntaxp = false;
  Term term;
};

/// A conditional rewrite rule: lhs is an application, hypotheses are
/// relieved by backchaining (or evaluated syntactically for syntaxp).
struct RewriteRule {
  SymbolId name;
  Equiv equiv = Equiv::Equal;
  Term lhs;
  Term rhs;
  std::vector<RuleHyp> hyps;
};

/// (if test-var then-pattern else-var) => rhs, applied to both branch
/// orientations when merging an unresolved if.
struct BranchMergeRule {
  SymbolId name;
  SymbolId test_var;
  Term then_pattern;
  SymbolId else_var;
  Term rhs;
};

/// Declared implication among generated Boolean variables: once every
/// binding pattern has matched an issued variable's object, the body is
/// interpreted and conjoined into the constraint formula.
struct ConstraintRule {
  SymbolId name;
  std::vector<std::pair<SymbolId, Term>> bindings;  // (binding-var, pattern)
  Term body;
};

/// Counterexample translation rule: when a term matching lhs_pattern is
/// assigned a value, re-assign `target`'s matched subterm to the evaluation
/// of `update`.
struct CtrexRule {
  SymbolId name;
  Term lhs_pattern;
  SymbolId value_var;
  SymbolId target;
  Term update;
};

enum class Expectation { Prove, Fail, FailUnverified };

struct TheoremEvent {
  SymbolId name;
  Term hyp;
  Term concl;
  Value g_bindings_raw;  // parsed lazily by the shape-spec layer
  std::optional<Term> cov_samples;
  Expectation expect = Expectation::Prove;
};

using Event =
    std::variant<Defn, UninterpEvent, RewriteRule, BranchMergeRule, ConstraintRule,
                 CtrexRule, TheoremEvent>;

class EventError : public std::runtime_error {
 public:
  explicit EventError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parses a file's worth of text into events, preserving order.
std::vector<Event> parse_events(std::string_view text, std::string filename = "<input>");
Event parse_event(const Value& form);

class EvalCtx;
using NativeFn = std::function<Value(const std::vector<Value>&, EvalCtx&)>;

/// The loaded event database: definitions, uninterpreted flags, and the
/// four rule classes indexed by leading function symbol. Immutable during
/// proving.
class EventDb {
 public:
  /// Appends one event; throws EventError on invariant violations
  /// (free-variable escapes, malformed rule shapes, bad heads).
  void add_event(const Event& e);
  void add_events(const std::vector<Event>& es);

  const Defn* defn(SymbolId fn) const;
  UninterpMode uninterp_mode(SymbolId fn) const;

  const std::vector<RewriteRule>& rewrites_for(SymbolId fn) const;
  const std::vector<BranchMergeRule>& merges_for(SymbolId fn) const;
  /// Constraint rules having at least one binding pattern headed by fn.
  std::vector<const ConstraintRule*> constraints_for(SymbolId fn) const;
  const std::vector<ConstraintRule>& all_constraints() const { return constraints_; }
  const std::vector<CtrexRule>& ctrex_rules() const { return ctrex_; }
  const std::vector<RewriteRule>& all_rewrites() const { return rewrites_flat_; }
  const std::vector<BranchMergeRule>& all_merges() const { return merges_flat_; }

  void register_native(SymbolId fn, size_t arity, NativeFn f);
  const std::pair<size_t, NativeFn>* native(SymbolId fn) const;

  /// Human-readable dump of the indexed database (--print-rules).
  std::string dump() const;

 private:
  std::map<SymbolId, Defn> defns_;
  std::map<SymbolId, UninterpMode> uninterp_;
  std::map<SymbolId, std::vector<RewriteRule>> rewrites_;
  std::map<SymbolId, std::vector<BranchMergeRule>> merges_;
  std::vector<ConstraintRule> constraints_;
  std::map<SymbolId, std::vector<size_t>> constraints_by_head_;
  std::vector<CtrexRule> ctrex_;
  std::vector<RewriteRule> rewrites_flat_;
  std::vector<BranchMergeRule> merges_flat_;
  std::map<SymbolId, std::pair<size_t, NativeFn>> natives_;
};

}  // namespace termblast
