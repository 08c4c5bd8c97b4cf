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
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "termblast/syms.hpp"
#include "termblast/value.hpp"

namespace termblast {

/// A term of the conjecture/rule language: variable, quoted constant,
/// function application, or lambda application. Lambdas are closed: the
/// parser completes their formal lists so that bodies reference formals
/// only.
class Term {
 public:
  enum class Kind : uint8_t { Var, Quote, App, LambdaApp };

  Term() = default;

  static Term var(SymbolId name);
  static Term quote(Value v);
  static Term app(SymbolId fn, std::vector<Term> args);
  static Term lambda_app(std::vector<SymbolId> formals, Term body, std::vector<Term> args);

  bool valid() const { return n_ != nullptr; }
  Kind kind() const;
  SymbolId var_name() const;
  const Value& quoted() const;
  SymbolId fn() const;
  const std::vector<Term>& args() const;
  const std::vector<SymbolId>& formals() const;
  const Term& body() const;

  bool is_app(SymbolId fn) const { return valid() && kind() == Kind::App && this->fn() == fn; }

  static bool equal(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return equal(a, b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

class TermError : public std::runtime_error {
 public:
  explicit TermError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Translates an s-expression into a Term.
///
/// Self-quoting atoms: t, nil, keywords, integers, strings. Other symbols
/// are variables. Basic macros are expanded here: and, or, implies, iff,
/// let, let*, list, +, -, *, 1+, 1-, >, <=, >=, and a 1-argument
/// gl-force-check. Improper argument lists and non-symbol function
/// positions are rejected.
Term parse_term(const Value& form);

std::set<SymbolId> free_vars(const Term& t);

/// Builds a lambda application, closing the lambda: free variables of the
/// body not among the formals are appended as formals bound to themselves.
Term make_closed_lambda_app(std::vector<SymbolId> formals, Term body,
                            std::vector<Term> args);

std::string print_term(const Term& t);

/// Renders the term back to an s-expression Value (inverse of parse_term
/// up to macro expansion).
Value term_to_value(const Term& t);

}  // namespace termblast
