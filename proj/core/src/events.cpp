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

#include "termblast/events.hpp"

#include <algorithm>
#include <sstream>

#include "termblast/reader.hpp"

namespace termblast {

namespace {

std::vector<Value> elems_of(const Value& form, const char* what) {
  std::vector<Value> out;
  const Value* x = &form;
  while (x->is_cons()) {
    out.push_back(x->car());
    x = &x->cdr();
  }
  if (!x->is_nil()) throw EventError(std::string("improper list in ") + what);
  return out;
}

SymbolId expect_symbol(const Value& v, const char* what) {
  if (!v.is_symbol()) throw EventError(std::string(what) + " must be a symbol: " + print_value(v));
  return v.sym();
}

// Parses the keyword arguments after a fixed prefix of `elems`.
std::map<SymbolId, Value> keyword_args(const std::vector<Value>& elems, size_t start,
                                       const char* what) {
  std::map<SymbolId, Value> out;
  if ((elems.size() - start) % 2 != 0)
    throw EventError(std::string("odd keyword arguments in ") + what);
  for (size_t i = start; i < elems.size(); i += 2) {
    if (!elems[i].is_keyword())
      throw EventError(std::string("expected keyword in ") + what + ": " + print_value(elems[i]));
    out[elems[i].sym()] = elems[i + 1];
  }
  return out;
}

// Splits a theorem-shaped form into (equiv, hyps, lhs, rhs). Accepted
// shapes: (equal lhs rhs), (iff lhs rhs),
// (implies hyp (equal lhs rhs)), (implies (and hyp...) (iff lhs rhs)).
struct ThmShape {
  Equiv equiv;
  std::vector<RuleHyp> hyps;
  Value lhs, rhs;
};

RuleHyp parse_hyp(const Value& h) {
  const Syms& S = syms();
  if (h.is_cons() && h.car().is_symbol() && h.car().sym() == S.SYNTAXP) {
    std::vector<Value> e = elems_of(h, "syntaxp");
    if (e.size() != 2) throw EventError("syntaxp takes one argument");
    return RuleHyp{true, parse_term(e[1])};
  }
  return RuleHyp{false, parse_term(h)};
}

ThmShape parse_thm_shape(const Value& form, const char* what) {
  const Syms& S = syms();
  std::vector<Value> e = elems_of(form, what);
  if (e.empty() || !e[0].is_symbol())
    throw EventError(std::string("malformed rule body in ") + what);
  SymbolId head = e[0].sym();
  ThmShape out;
  if (head == S.IMPLIES) {
    if (e.size() != 3) throw EventError("implies takes two arguments");
    const Value& hypform = e[1];
    if (hypform.is_cons() && hypform.car().is_symbol() && hypform.car().sym() == S.AND) {
      std::vector<Value> hs = elems_of(hypform, "rule hypotheses");
      for (size_t i = 1; i < hs.size(); ++i) out.hyps.push_back(parse_hyp(hs[i]));
    } else {
      out.hyps.push_back(parse_hyp(hypform));
    }
    std::vector<Value> eq = elems_of(e[2], what);
    if (eq.size() != 3 || !eq[0].is_symbol() ||
        (eq[0].sym() != S.EQUAL && eq[0].sym() != S.IFF))
      throw EventError(std::string(what) +
                       ": conclusion must be (equal lhs rhs) or (iff lhs rhs)");
    out.equiv = eq[0].sym() == S.IFF ? Equiv::Iff : Equiv::Equal;
    out.lhs = eq[1];
    out.rhs = eq[2];
    return out;
  }
  if (head == S.EQUAL || head == S.IFF) {
    if (e.size() != 3)
      throw EventError(std::string(what) + ": equal/iff takes two arguments");
    out.equiv = head == S.IFF ? Equiv::Iff : Equiv::Equal;
    out.lhs = e[1];
    out.rhs = e[2];
    return out;
  }
  throw EventError(std::string(what) +
                   ": rule must be (equal ...), (iff ...) or (implies ... (equal ...))");
}

}  // namespace

Event parse_event(const Value& form) {
  const Syms& S = syms();
  std::vector<Value> e = elems_of(form, "event");
  if (e.empty() || !e[0].is_symbol())
    throw EventError("event must start with a symbol: " + print_value(form));
  SymbolId head = e[0].sym();

  if (head == S.DEFUN) {
    if (e.size() != 4) throw EventError("defun needs name, formals, body");
    Defn d;
    d.name = expect_symbol(e[1], "defun name");
    for (const Value& f : elems_of(e[2], "defun formals"))
      d.formals.push_back(expect_symbol(f, "defun formal"));
    d.body = parse_term(e[3]);
    return d;
  }

  if (head == S.GL_SET_UNINTERPRETED) {
    if (e.size() != 2 && e.size() != 3)
      throw EventError("gl-set-uninterpreted needs a function and optional mode");
    UninterpEvent u;
    u.fn = expect_symbol(e[1], "gl-set-uninterpreted function");
    u.mode = UninterpMode::Uninterpreted;
    if (e.size() == 3) {
      if (e[2].is_nil())
        u.mode = UninterpMode::Interpreted;
      else if (e[2].is_t())
        u.mode = UninterpMode::Uninterpreted;
      else if (e[2].is_symbol() && e[2].sym() == S.K_CONCRETE_ONLY)
        u.mode = UninterpMode::ConcreteOnly;
      else
        throw EventError("gl-set-uninterpreted mode must be t, nil or :concrete-only");
    }
    return u;
  }

  if (head == S.DEF_GL_REWRITE) {
    if (e.size() != 3) throw EventError("def-gl-rewrite needs a name and a rule form");
    ThmShape ts = parse_thm_shape(e[2], "def-gl-rewrite");
    RewriteRule r;
    r.name = expect_symbol(e[1], "rule name");
    r.equiv = ts.equiv;
    r.hyps = std::move(ts.hyps);
    r.lhs = parse_term(ts.lhs);
    r.rhs = parse_term(ts.rhs);
    return r;
  }

  if (head == S.DEF_GL_BRANCH_MERGE) {
    if (e.size() != 3) throw EventError("def-gl-branch-merge needs a name and a rule form");
    ThmShape ts = parse_thm_shape(e[2], "def-gl-branch-merge");
    if (!ts.hyps.empty())
      throw EventError("def-gl-branch-merge rules take no hypotheses");
    if (ts.equiv != Equiv::Equal)
      throw EventError("def-gl-branch-merge rules must use equal");
    Term lhs = parse_term(ts.lhs);
    if (!lhs.is_app(S.IF) || lhs.args().size() != 3)
      throw EventError("branch-merge lhs must be (if test then else)");
    const Term& test = lhs.args()[0];
    const Term& then = lhs.args()[1];
    const Term& els = lhs.args()[2];
    if (test.kind() != Term::Kind::Var || els.kind() != Term::Kind::Var)
      throw EventError("branch-merge test and else branch must be variables");
    if (test.var_name() == els.var_name())
      throw EventError("branch-merge test and else variables must be distinct");
    if (then.kind() != Term::Kind::App || then.fn() == S.IF || then.fn() == S.QUOTE)
      throw EventError("branch-merge then branch must be a function call");
    BranchMergeRule r;
    r.name = expect_symbol(e[1], "rule name");
    r.test_var = test.var_name();
    r.then_pattern = then;
    r.else_var = els.var_name();
    r.rhs = parse_term(ts.rhs);
    return r;
  }

  if (head == S.DEF_GL_BOOLEAN_CONSTRAINT) {
    if (e.size() < 2) throw EventError("def-gl-boolean-constraint needs a name");
    ConstraintRule r;
    r.name = expect_symbol(e[1], "rule name");
    auto kw = keyword_args(e, 2, "def-gl-boolean-constraint");
    auto bit = kw.find(S.K_BINDINGS);
    auto bodyit = kw.find(S.K_BODY);
    if (bit == kw.end() || bodyit == kw.end())
      throw EventError("def-gl-boolean-constraint needs :bindings and :body");
    for (const Value& b : elems_of(bit->second, ":bindings")) {
      std::vector<Value> pair = elems_of(b, "constraint binding");
      if (pair.size() != 2) throw EventError("constraint binding must be (var pattern)");
      r.bindings.emplace_back(expect_symbol(pair[0], "constraint binding var"),
                              parse_term(pair[1]));
    }
    r.body = parse_term(bodyit->second);
    return r;
  }

  if (head == S.DEF_GLCP_CTREX_REWRITE) {
    if (e.size() != 3)
      throw EventError("def-glcp-ctrex-rewrite needs (pattern value) and (target update)");
    std::vector<Value> lhs = elems_of(e[1], "ctrex lhs");
    std::vector<Value> upd = elems_of(e[2], "ctrex update");
    if (lhs.size() != 2 || upd.size() != 2)
      throw EventError("def-glcp-ctrex-rewrite forms must be pairs");
    CtrexRule r;
    static uint32_t ctrex_counter = 0;
    r.name = intern("CTREX-RULE-" + std::to_string(ctrex_counter++));
    r.lhs_pattern = parse_term(lhs[0]);
    r.value_var = expect_symbol(lhs[1], "ctrex value variable");
    r.target = expect_symbol(upd[0], "ctrex target variable");
    r.update = parse_term(upd[1]);
    return r;
  }

  if (head == S.DEF_GL_THM) {
    if (e.size() < 2) throw EventError("def-gl-thm needs a name");
    TheoremEvent t;
    t.name = expect_symbol(e[1], "theorem name");
    auto kw = keyword_args(e, 2, "def-gl-thm");
    auto hyp = kw.find(S.K_HYP);
    auto concl = kw.find(S.K_CONCL);
    if (hyp == kw.end() || concl == kw.end())
      throw EventError("def-gl-thm needs :hyp and :concl");
    t.hyp = parse_term(hyp->second);
    t.concl = parse_term(concl->second);
    auto gb = kw.find(S.K_G_BINDINGS);
    t.g_bindings_raw = gb == kw.end() ? Value::nil() : gb->second;
    auto cs = kw.find(S.K_COV_SAMPLES);
    if (cs != kw.end()) t.cov_samples = parse_term(cs->second);
    auto ex = kw.find(S.K_EXPECT);
    if (ex != kw.end()) {
      SymbolId v = expect_symbol(ex->second, ":expect value");
      if (v == S.FAIL)
        t.expect = Expectation::Fail;
      else if (v == S.FAIL_UNVERIFIED)
        t.expect = Expectation::FailUnverified;
      else
        throw EventError(":expect value must be fail or fail-unverified");
    }
    // :rule-classes and :cov-theory-add are accepted and ignored.
    for (const auto& [k, v] : kw) {
      (void)v;
      if (k != S.K_HYP && k != S.K_CONCL && k != S.K_G_BINDINGS && k != S.K_RULE_CLASSES &&
          k != S.K_COV_THEORY_ADD && k != S.K_COV_SAMPLES && k != S.K_EXPECT)
        throw EventError("unknown def-gl-thm keyword: " + symbol_name(k));
    }
    return t;
  }

  throw EventError("unknown event head: " + symbol_name(head));
}

std::vector<Event> parse_events(std::string_view text, std::string filename) {
  Reader r(text, filename);
  std::vector<Event> out;
  for (;;) {
    SourcePos at = r.pos();
    std::optional<Value> form = r.next();
    if (!form) break;
    try {
      out.push_back(parse_event(*form));
    } catch (const EventError& err) {
      throw EventError(at.file + ":" + std::to_string(at.line) + ": " + err.what());
    } catch (const TermError& err) {
      throw EventError(at.file + ":" + std::to_string(at.line) + ": " + err.what());
    }
  }
  return out;
}

namespace {

void check_subset(const std::set<SymbolId>& sub, const std::set<SymbolId>& super,
                  const std::string& rule, const char* what) {
  for (SymbolId v : sub) {
    if (!super.count(v))
      throw EventError(rule + ": " + what + " mentions variable " + symbol_name(v) +
                       " not bound on the left-hand side");
  }
}

}  // namespace

void EventDb::add_event(const Event& e) {
  const Syms& S = syms();
  if (const auto* d = std::get_if<Defn>(&e)) {
    std::set<SymbolId> formals(d->formals.begin(), d->formals.end());
    if (formals.size() != d->formals.size())
      throw EventError("defun " + symbol_name(d->name) + ": duplicate formals");
    check_subset(free_vars(d->body), formals, "defun " + symbol_name(d->name), "body");
    defns_[d->name] = *d;  // redefinition replaces
    return;
  }
  if (const auto* u = std::get_if<UninterpEvent>(&e)) {
    uninterp_[u->fn] = u->mode;
    return;
  }
  if (const auto* r = std::get_if<RewriteRule>(&e)) {
    std::string name = symbol_name(r->name);
    if (r->lhs.kind() != Term::Kind::App)
      throw EventError(name + ": rewrite lhs must be a function application");
    if (r->lhs.fn() == S.IF || r->lhs.fn() == S.QUOTE)
      throw EventError(name + ": rewrite lhs head may not be if or quote");
    std::set<SymbolId> lhsvars = free_vars(r->lhs);
    check_subset(free_vars(r->rhs), lhsvars, name, "right-hand side");
    for (const RuleHyp& h : r->hyps)
      check_subset(free_vars(h.term), lhsvars, name, "hypothesis");
    rewrites_[r->lhs.fn()].push_back(*r);
    rewrites_flat_.push_back(*r);
    return;
  }
  if (const auto* r = std::get_if<BranchMergeRule>(&e)) {
    std::string name = symbol_name(r->name);
    std::set<SymbolId> lhsvars = free_vars(r->then_pattern);
    lhsvars.insert(r->test_var);
    lhsvars.insert(r->else_var);
    check_subset(free_vars(r->rhs), lhsvars, name, "right-hand side");
    merges_[r->then_pattern.fn()].push_back(*r);
    merges_flat_.push_back(*r);
    return;
  }
  if (const auto* r = std::get_if<ConstraintRule>(&e)) {
    std::string name = symbol_name(r->name);
    std::set<SymbolId> bound;
    std::set<SymbolId> bvars;
    for (const auto& [v, pat] : r->bindings) {
      if (!bvars.insert(v).second)
        throw EventError(name + ": duplicate constraint binding variable " + symbol_name(v));
      if (pat.kind() != Term::Kind::App)
        throw EventError(name + ": constraint binding pattern must be an application");
      auto pv = free_vars(pat);
      bound.insert(pv.begin(), pv.end());
    }
    std::set<SymbolId> bodyv = free_vars(r->body);
    for (SymbolId v : bvars) {
      if (!bodyv.count(v))
        throw EventError(name + ": binding variable " + symbol_name(v) + " unused in body");
    }
    bound.insert(bvars.begin(), bvars.end());
    check_subset(bodyv, bound, name, "body");
    size_t idx = constraints_.size();
    constraints_.push_back(*r);
    std::set<SymbolId> heads;
    for (const auto& [v, pat] : r->bindings) heads.insert(pat.fn());
    for (SymbolId h : heads) constraints_by_head_[h].push_back(idx);
    return;
  }
  if (const auto* r = std::get_if<CtrexRule>(&e)) {
    std::string name = symbol_name(r->name);
    std::set<SymbolId> pv = free_vars(r->lhs_pattern);
    if (!pv.count(r->target))
      throw EventError(name + ": ctrex target must occur in the pattern");
    if (pv.count(r->value_var))
      throw EventError(name + ": ctrex value variable must not occur in the pattern");
    std::set<SymbolId> allowed = pv;
    allowed.insert(r->value_var);
    check_subset(free_vars(r->update), allowed, name, "update");
    ctrex_.push_back(*r);
    return;
  }
  // Theorems are executed by the prover, not stored.
  (void)std::get<TheoremEvent>(e);
}

void EventDb::add_events(const std::vector<Event>& es) {
  for (const Event& e : es)
    if (!std::holds_alternative<TheoremEvent>(e)) add_event(e);
}

const Defn* EventDb::defn(SymbolId fn) const {
  auto it = defns_.find(fn);
  return it == defns_.end() ? nullptr : &it->second;
}

UninterpMode EventDb::uninterp_mode(SymbolId fn) const {
  auto it = uninterp_.find(fn);
  return it == uninterp_.end() ? UninterpMode::Interpreted : it->second;
}

const std::vector<RewriteRule>& EventDb::rewrites_for(SymbolId fn) const {
  static const std::vector<RewriteRule> empty;
  auto it = rewrites_.find(fn);
  return it == rewrites_.end() ? empty : it->second;
}

const std::vector<BranchMergeRule>& EventDb::merges_for(SymbolId fn) const {
  static const std::vector<BranchMergeRule> empty;
  auto it = merges_.find(fn);
  return it == merges_.end() ? empty : it->second;
}

std::vector<const ConstraintRule*> EventDb::constraints_for(SymbolId fn) const {
  std::vector<const ConstraintRule*> out;
  auto it = constraints_by_head_.find(fn);
  if (it == constraints_by_head_.end()) return out;
  for (size_t i : it->second) out.push_back(&constraints_[i]);
  return out;
}

void EventDb::register_native(SymbolId fn, size_t arity, NativeFn f) {
  natives_[fn] = {arity, std::move(f)};
}

const std::pair<size_t, NativeFn>* EventDb::native(SymbolId fn) const {
  auto it = natives_.find(fn);
  return it == natives_.end() ? nullptr : &it->second;
}

std::string EventDb::dump() const {
  std::ostringstream os;
  os << "definitions: " << defns_.size() << "\n";
  for (const auto& [fn, mode] : uninterp_) {
    os << "uninterpreted " << symbol_name(fn) << " "
       << (mode == UninterpMode::Interpreted
               ? "nil"
               : mode == UninterpMode::Uninterpreted ? "t" : ":concrete-only")
       << "\n";
  }
  for (const auto& [fn, rules] : rewrites_) {
    os << "rewrites for " << symbol_name(fn) << ":\n";
    for (const RewriteRule& r : rules) {
      os << "  " << symbol_name(r.name) << (r.equiv == Equiv::Iff ? " (iff) " : " ")
         << print_term(r.lhs) << " => " << print_term(r.rhs);
      if (!r.hyps.empty()) os << "  [" << r.hyps.size() << " hyp(s)]";
      os << "\n";
    }
  }
  for (const auto& [fn, rules] : merges_) {
    os << "branch merges for " << symbol_name(fn) << ":\n";
    for (const BranchMergeRule& r : rules)
      os << "  " << symbol_name(r.name) << " " << print_term(r.then_pattern) << " => "
         << print_term(r.rhs) << "\n";
  }
  if (!constraints_.empty()) {
    os << "constraint rules:\n";
    for (const ConstraintRule& r : constraints_) {
      os << "  " << symbol_name(r.name) << " bindings";
      for (const auto& [v, pat] : r.bindings)
        os << " (" << symbol_name(v) << " " << print_term(pat) << ")";
      os << " body " << print_term(r.body) << "\n";
    }
  }
  if (!ctrex_.empty()) {
    os << "counterexample rules:\n";
    for (const CtrexRule& r : ctrex_)
      os << "  (" << print_term(r.lhs_pattern) << " " << symbol_name(r.value_var) << ") -> ("
         << symbol_name(r.target) << " " << print_term(r.update) << ")\n";
  }
  return os.str();
}

}  // namespace termblast
