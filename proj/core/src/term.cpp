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

#include "termblast/term.hpp"

#include <algorithm>

namespace termblast {

const Syms& Syms::get() {
  static const Syms s;
  return s;
}

struct Term::Node {
  Kind kind;
  SymbolId sym = 0;  // Var name or App fn
  Value quoted;
  std::vector<Term> args;
  std::vector<SymbolId> formals;
  Term body;
};

Term Term::var(SymbolId name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->sym = name;
  return Term(std::move(n));
}

Term Term::quote(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quote;
  n->quoted = std::move(v);
  return Term(std::move(n));
}

Term Term::app(SymbolId fn, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->sym = fn;
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::lambda_app(std::vector<SymbolId> formals, Term body, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::LambdaApp;
  n->formals = std::move(formals);
  n->body = std::move(body);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return n_->kind; }
SymbolId Term::var_name() const { return n_->sym; }
const Value& Term::quoted() const { return n_->quoted; }
SymbolId Term::fn() const { return n_->sym; }
const std::vector<Term>& Term::args() const { return n_->args; }
const std::vector<SymbolId>& Term::formals() const { return n_->formals; }
const Term& Term::body() const { return n_->body; }

bool Term::equal(const Term& a, const Term& b) {
  if (a.n_ == b.n_) return true;
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Var:
      return a.var_name() == b.var_name();
    case Kind::Quote:
      return Value::equal(a.quoted(), b.quoted());
    case Kind::App: {
      if (a.fn() != b.fn() || a.args().size() != b.args().size()) return false;
      for (size_t i = 0; i < a.args().size(); ++i)
        if (!equal(a.args()[i], b.args()[i])) return false;
      return true;
    }
    case Kind::LambdaApp: {
      if (a.formals() != b.formals() || a.args().size() != b.args().size()) return false;
      if (!equal(a.body(), b.body())) return false;
      for (size_t i = 0; i < a.args().size(); ++i)
        if (!equal(a.args()[i], b.args()[i])) return false;
      return true;
    }
  }
  return false;
}

namespace {

void free_vars_rec(const Term& t, std::set<SymbolId>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out.insert(t.var_name());
      return;
    case Term::Kind::Quote:
      return;
    case Term::Kind::App:
      for (const Term& a : t.args()) free_vars_rec(a, out);
      return;
    case Term::Kind::LambdaApp:
      // Lambdas are closed, so the body contributes nothing free.
      for (const Term& a : t.args()) free_vars_rec(a, out);
      return;
  }
}

std::vector<Value> list_elems(const Value& v, const char* what) {
  std::vector<Value> out;
  const Value* x = &v;
  while (x->is_cons()) {
    out.push_back(x->car());
    x = &x->cdr();
  }
  if (!x->is_nil())
    throw TermError(std::string("improper list in ") + what + ": " + print_value(v));
  return out;
}

Term parse_rec(const Value& form);

Term parse_fold_binary(SymbolId binfn, const Value& identity, const std::vector<Value>& args,
                       size_t i) {
  if (i + 1 == args.size()) return parse_rec(args[i]);
  return Term::app(binfn, {parse_rec(args[i]), parse_fold_binary(binfn, identity, args, i + 1)});
}

Term make_lambda_app(std::vector<SymbolId> formals, Term body, std::vector<Term> actuals) {
  return make_closed_lambda_app(std::move(formals), std::move(body), std::move(actuals));
}

Term parse_let(const std::vector<Value>& elems, bool sequential) {
  const Syms& S = syms();
  if (elems.size() != 3)
    throw TermError("let form needs bindings and a single body");
  std::vector<Value> binds = list_elems(elems[1], "let bindings");
  if (sequential && binds.size() > 1) {
    // (let* ((a x) . rest) body) == (let ((a x)) (let* rest body))
    Value inner = list_of({Value::symbol(S.LET_STAR), elems[1].cdr(), elems[2]});
    Value outer = list_of({Value::symbol(S.LET),
                           Value::cons(elems[1].car(), Value::nil()), inner});
    return parse_rec(outer);
  }
  std::vector<SymbolId> formals;
  std::vector<Term> actuals;
  for (const Value& b : binds) {
    std::vector<Value> pair = list_elems(b, "let binding");
    if (pair.size() != 2 || !pair[0].is_symbol())
      throw TermError("malformed let binding: " + print_value(b));
    formals.push_back(pair[0].sym());
    actuals.push_back(parse_rec(pair[1]));
  }
  return make_lambda_app(std::move(formals), parse_rec(elems[2]), std::move(actuals));
}

Term parse_rec(const Value& form) {
  const Syms& S = syms();
  switch (form.kind()) {
    case Value::Kind::Int:
    case Value::Kind::Str:
      return Term::quote(form);
    case Value::Kind::Sym: {
      if (form.is_t() || form.is_nil() || form.is_keyword()) return Term::quote(form);
      return Term::var(form.sym());
    }
    case Value::Kind::Cons:
      break;
  }

  std::vector<Value> elems = list_elems(form, "term");
  if (elems.empty()) throw TermError("empty application");
  const Value& head = elems[0];

  if (head.is_cons()) {
    // ((lambda (formals) body) args...)
    std::vector<Value> lam = list_elems(head, "lambda");
    if (lam.size() != 3 || !lam[0].is_symbol() || lam[0].sym() != S.LAMBDA)
      throw TermError("function position must be a symbol or lambda: " + print_value(head));
    std::vector<SymbolId> formals;
    for (const Value& f : list_elems(lam[1], "lambda formals")) {
      if (!f.is_symbol()) throw TermError("lambda formal must be a symbol");
      formals.push_back(f.sym());
    }
    if (std::set<SymbolId>(formals.begin(), formals.end()).size() != formals.size())
      throw TermError("duplicate lambda formals in " + print_value(head));
    if (elems.size() - 1 != formals.size())
      throw TermError("lambda arity mismatch in " + print_value(form));
    std::vector<Term> actuals;
    for (size_t i = 1; i < elems.size(); ++i) actuals.push_back(parse_rec(elems[i]));
    return make_lambda_app(std::move(formals), parse_rec(lam[2]), std::move(actuals));
  }
  if (!head.is_symbol())
    throw TermError("function position must be a symbol: " + print_value(form));
  if (head.sym() == syms().LAMBDA)
    throw TermError("lambda may appear only in application position: " +
                    print_value(form));

  SymbolId fn = head.sym();
  size_t n = elems.size() - 1;
  auto arg = [&](size_t i) -> const Value& { return elems[i + 1]; };

  if (fn == S.QUOTE) {
    if (n != 1) throw TermError("quote takes one argument");
    return Term::quote(arg(0));
  }
  if (fn == S.AND) {
    if (n == 0) return Term::quote(Value::t());
    if (n == 1) return parse_rec(arg(0));
    Value rest = form.cdr().cdr();
    return Term::app(S.IF, {parse_rec(arg(0)),
                            parse_rec(Value::cons(Value::symbol(S.AND), rest)),
                            Term::quote(Value::nil())});
  }
  if (fn == S.OR) {
    if (n == 0) return Term::quote(Value::nil());
    if (n == 1) return parse_rec(arg(0));
    Value rest = form.cdr().cdr();
    Term first = parse_rec(arg(0));
    return Term::app(S.IF, {first, first,
                            parse_rec(Value::cons(Value::symbol(S.OR), rest))});
  }
  if (fn == S.IMPLIES) {
    if (n != 2) throw TermError("implies takes two arguments");
    return Term::app(S.IF, {parse_rec(arg(0)),
                            Term::app(S.IF, {parse_rec(arg(1)), Term::quote(Value::t()),
                                             Term::quote(Value::nil())}),
                            Term::quote(Value::t())});
  }
  if (fn == S.IFF) {
    if (n != 2) throw TermError("iff takes two arguments");
    Term a = parse_rec(arg(0));
    Term b = parse_rec(arg(1));
    return Term::app(S.IF, {a, Term::app(S.IF, {b, Term::quote(Value::t()),
                                                Term::quote(Value::nil())}),
                            Term::app(S.IF, {b, Term::quote(Value::nil()),
                                             Term::quote(Value::t())})});
  }
  if (fn == S.LET || fn == S.LET_STAR) return parse_let(elems, fn == S.LET_STAR);
  if (fn == S.LIST) {
    Term out = Term::quote(Value::nil());
    for (size_t i = n; i-- > 0;) out = Term::app(S.CONS, {parse_rec(arg(i)), out});
    return out;
  }
  if (fn == S.PLUS) {
    if (n == 0) return Term::quote(Value::integer(0));
    if (n == 1)
      return Term::app(S.BINARY_PLUS, {Term::quote(Value::integer(0)), parse_rec(arg(0))});
    std::vector<Value> rest(elems.begin() + 1, elems.end());
    return parse_fold_binary(S.BINARY_PLUS, Value::integer(0), rest, 0);
  }
  if (fn == S.STAR) {
    if (n == 0) return Term::quote(Value::integer(1));
    if (n == 1)
      return Term::app(S.BINARY_STAR, {Term::quote(Value::integer(1)), parse_rec(arg(0))});
    std::vector<Value> rest(elems.begin() + 1, elems.end());
    return parse_fold_binary(S.BINARY_STAR, Value::integer(1), rest, 0);
  }
  if (fn == S.MINUS) {
    if (n == 1) return Term::app(S.UNARY_MINUS, {parse_rec(arg(0))});
    if (n == 2)
      return Term::app(S.BINARY_PLUS,
                       {parse_rec(arg(0)), Term::app(S.UNARY_MINUS, {parse_rec(arg(1))})});
    throw TermError("- takes one or two arguments");
  }
  if (fn == S.ONE_MINUS) {
    if (n != 1) throw TermError("1- takes one argument");
    return Term::app(S.BINARY_PLUS, {Term::quote(Value::integer(-1)), parse_rec(arg(0))});
  }
  if (fn == S.ONE_PLUS) {
    if (n != 1) throw TermError("1+ takes one argument");
    return Term::app(S.BINARY_PLUS, {Term::quote(Value::integer(1)), parse_rec(arg(0))});
  }
  if (fn == S.GREATER) {
    if (n != 2) throw TermError("> takes two arguments");
    return Term::app(S.LESS, {parse_rec(arg(1)), parse_rec(arg(0))});
  }
  if (fn == S.LEQ) {
    if (n != 2) throw TermError("<= takes two arguments");
    return Term::app(S.NOT, {Term::app(S.LESS, {parse_rec(arg(1)), parse_rec(arg(0))})});
  }
  if (fn == S.GEQ) {
    if (n != 2) throw TermError(">= takes two arguments");
    return Term::app(S.NOT, {Term::app(S.LESS, {parse_rec(arg(0)), parse_rec(arg(1))})});
  }
  if (fn == S.GL_FORCE_CHECK && n == 1) {
    return Term::app(S.GL_FORCE_CHECK, {parse_rec(arg(0)), Term::quote(Value::nil()),
                                        Term::quote(Value::nil())});
  }

  std::vector<Term> args;
  for (size_t i = 0; i < n; ++i) args.push_back(parse_rec(arg(i)));
  return Term::app(fn, std::move(args));
}

}  // namespace

Term parse_term(const Value& form) { return parse_rec(form); }

Term make_closed_lambda_app(std::vector<SymbolId> formals, Term body,
                            std::vector<Term> args) {
  std::set<SymbolId> bodyfree = free_vars(body);
  for (SymbolId v : bodyfree) {
    if (std::find(formals.begin(), formals.end(), v) == formals.end()) {
      formals.push_back(v);
      args.push_back(Term::var(v));
    }
  }
  return Term::lambda_app(std::move(formals), std::move(body), std::move(args));
}

std::set<SymbolId> free_vars(const Term& t) {
  std::set<SymbolId> out;
  free_vars_rec(t, out);
  return out;
}

Value term_to_value(const Term& t) {
  const Syms& S = syms();
  switch (t.kind()) {
    case Term::Kind::Var:
      return Value::symbol(t.var_name());
    case Term::Kind::Quote: {
      const Value& q = t.quoted();
      if (q.is_t() || q.is_nil() || q.is_keyword() || q.is_integer() || q.is_string())
        return q;
      return list_of({Value::symbol(S.QUOTE), q});
    }
    case Term::Kind::App: {
      std::vector<Value> elems{Value::symbol(t.fn())};
      for (const Term& a : t.args()) elems.push_back(term_to_value(a));
      return list_of(elems);
    }
    case Term::Kind::LambdaApp: {
      std::vector<Value> formals;
      for (SymbolId f : t.formals()) formals.push_back(Value::symbol(f));
      Value lam = list_of({Value::symbol(S.LAMBDA), list_of(formals), term_to_value(t.body())});
      std::vector<Value> elems{lam};
      for (const Term& a : t.args()) elems.push_back(term_to_value(a));
      return list_of(elems);
    }
  }
  return Value::nil();
}

std::string print_term(const Term& t) { return print_value(term_to_value(t)); }

}  // namespace termblast
