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

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace termblast {

using SymbolId = uint32_t;

/// Process-wide interning table for symbol names. Names are stored exactly
/// as given (the reader has already upcased bare tokens); interning is
/// thread-safe so parallel proofs may share the table.
class SymbolTable {
 public:
  static SymbolTable& instance();

  SymbolId intern(std::string_view name);
  const std::string& name(SymbolId id) const;

 private:
  SymbolTable();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline SymbolId intern(std::string_view name) {
  return SymbolTable::instance().intern(name);
}
inline const std::string& symbol_name(SymbolId id) {
  return SymbolTable::instance().name(id);
}

struct ConsCell;

/// A concrete Lisp-style datum: symbol, arbitrary-precision integer, cons
/// pair, or string. `nil` doubles as false and the empty list; `t` and `nil`
/// are the canonical booleans. Values are immutable and cheap to copy.
class Value {
 public:
  enum class Kind : uint8_t { Int = 0, Sym = 1, Str = 2, Cons = 3 };

  Value() : Value(nil()) {}

  static Value symbol(SymbolId id);
  static Value symbol(std::string_view name) { return symbol(intern(name)); }
  static Value integer(mpz_class n);
  static Value integer(long n) { return integer(mpz_class(n)); }
  static Value cons(Value car, Value cdr);
  static Value string(std::string s);

  static const Value& nil();
  static const Value& t();
  static Value boolean(bool b) { return b ? t() : nil(); }

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_symbol() const { return kind() == Kind::Sym; }
  bool is_integer() const { return kind() == Kind::Int; }
  bool is_cons() const { return kind() == Kind::Cons; }
  bool is_string() const { return kind() == Kind::Str; }

  bool is_nil() const;
  bool is_t() const;
  bool truthy() const { return !is_nil(); }
  bool is_boolean() const { return is_nil() || is_t(); }
  /// Keywords are symbols whose interned name begins with ':'.
  bool is_keyword() const;

  SymbolId sym() const { return std::get<SymbolId>(v_); }
  const mpz_class& num() const;
  const std::string& str() const;
  const Value& car() const;
  const Value& cdr() const;

  /// Guard-free accessors: car/cdr of a non-cons is nil.
  const Value& car_or_nil() const { return is_cons() ? car() : nil(); }
  const Value& cdr_or_nil() const { return is_cons() ? cdr() : nil(); }

  friend bool operator==(const Value& a, const Value& b) { return equal(a, b); }
  friend bool operator!=(const Value& a, const Value& b) { return !equal(a, b); }

  static bool equal(const Value& a, const Value& b);
  /// The `<<` total order: integers < symbols < strings < conses,
  /// lexicographic within each kind. Returns <0, 0 or >0.
  static int order(const Value& a, const Value& b);

  size_t hash() const;

 private:
  using Rep = std::variant<std::shared_ptr<const mpz_class>, SymbolId,
                           std::shared_ptr<const std::string>,
                           std::shared_ptr<const ConsCell>>;
  explicit Value(Rep v) : v_(std::move(v)) {}
  Rep v_;
};

struct ConsCell {
  Value car, cdr;
};

struct ValueHash {
  size_t operator()(const Value& v) const { return v.hash(); }
};

/// Builds a proper list from the given elements.
Value list_of(std::initializer_list<Value> elems);
Value list_of(const std::vector<Value>& elems);

/// Length of the proper-list prefix of v.
size_t list_length(const Value& v);
/// True iff v is nil or a cons chain ending in nil.
bool proper_listp(const Value& v);

/// Prints v in reader syntax; parse(print_value(v)) == v for every Value.
std::string print_value(const Value& v);

}  // namespace termblast
