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

#include "termblast/value.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace termblast {

struct SymbolTable::Impl {
  mutable std::mutex mu;
  std::vector<std::string> names;
  std::unordered_map<std::string, SymbolId> ids;
};

SymbolTable::SymbolTable() : impl_(std::make_unique<Impl>()) {}

SymbolTable& SymbolTable::instance() {
  static SymbolTable table;
  return table;
}

SymbolId SymbolTable::intern(std::string_view name) {
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->ids.find(std::string(name));
  if (it != impl_->ids.end()) return it->second;
  SymbolId id = static_cast<SymbolId>(impl_->names.size());
  impl_->names.emplace_back(name);
  impl_->ids.emplace(impl_->names.back(), id);
  return id;
}

const std::string& SymbolTable::name(SymbolId id) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->names.at(id);
}

Value Value::symbol(SymbolId id) { return Value(Rep(std::in_place_index<1>, id)); }

Value Value::integer(mpz_class n) {
  return Value(Rep(std::in_place_index<0>, std::make_shared<const mpz_class>(std::move(n))));
}

Value Value::cons(Value car, Value cdr) {
  return Value(Rep(std::in_place_index<3>,
                   std::make_shared<const ConsCell>(ConsCell{std::move(car), std::move(cdr)})));
}

Value Value::string(std::string s) {
  return Value(Rep(std::in_place_index<2>, std::make_shared<const std::string>(std::move(s))));
}

const Value& Value::nil() {
  static const Value v = Value::symbol(intern("NIL"));
  return v;
}

const Value& Value::t() {
  static const Value v = Value::symbol(intern("T"));
  return v;
}

bool Value::is_nil() const { return is_symbol() && sym() == nil().sym(); }
bool Value::is_t() const { return is_symbol() && sym() == t().sym(); }

bool Value::is_keyword() const {
  if (!is_symbol()) return false;
  const std::string& n = symbol_name(sym());
  return !n.empty() && n[0] == ':';
}

const mpz_class& Value::num() const {
  return *std::get<std::shared_ptr<const mpz_class>>(v_);
}
const std::string& Value::str() const {
  return *std::get<std::shared_ptr<const std::string>>(v_);
}
const Value& Value::car() const {
  return std::get<std::shared_ptr<const ConsCell>>(v_)->car;
}
const Value& Value::cdr() const {
  return std::get<std::shared_ptr<const ConsCell>>(v_)->cdr;
}

bool Value::equal(const Value& a, const Value& b) {
  const Value* x = &a;
  const Value* y = &b;
  // Iterate down cdr chains so long lists do not recurse deeply.
  for (;;) {
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case Kind::Sym:
        return x->sym() == y->sym();
      case Kind::Int:
        return mpz_cmp(x->num().get_mpz_t(), y->num().get_mpz_t()) == 0;
      case Kind::Str:
        return x->str() == y->str();
      case Kind::Cons: {
        if (std::get<std::shared_ptr<const ConsCell>>(x->v_) ==
            std::get<std::shared_ptr<const ConsCell>>(y->v_))
          return true;
        if (!equal(x->car(), y->car())) return false;
        x = &x->cdr();
        y = &y->cdr();
        break;
      }
    }
  }
}

int Value::order(const Value& a, const Value& b) {
  const Value* x = &a;
  const Value* y = &b;
  for (;;) {
    int kx = static_cast<int>(x->kind());
    int ky = static_cast<int>(y->kind());
    if (kx != ky) return kx < ky ? -1 : 1;
    switch (x->kind()) {
      case Kind::Int:
        return mpz_cmp(x->num().get_mpz_t(), y->num().get_mpz_t());
      case Kind::Sym: {
        if (x->sym() == y->sym()) return 0;
        return symbol_name(x->sym()).compare(symbol_name(y->sym())) < 0 ? -1 : 1;
      }
      case Kind::Str:
        return x->str().compare(y->str());
      case Kind::Cons: {
        int c = order(x->car(), y->car());
        if (c != 0) return c;
        x = &x->cdr();
        y = &y->cdr();
        break;
      }
    }
  }
}

static size_t hash_mix(size_t a, size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

size_t Value::hash() const {
  const Value* x = this;
  size_t h = 0xabcd1234u;
  for (;;) {
    switch (x->kind()) {
      case Kind::Sym:
        return hash_mix(h, 0x11u + x->sym());
      case Kind::Int: {
        size_t hv = mpz_fdiv_ui(x->num().get_mpz_t(), 0x7fffffffu);
        return hash_mix(h, hash_mix(0x22u, hv ^ (mpz_sgn(x->num().get_mpz_t()) < 0)));
      }
      case Kind::Str:
        return hash_mix(h, hash_mix(0x33u, std::hash<std::string>()(x->str())));
      case Kind::Cons:
        h = hash_mix(h, x->car().hash());
        x = &x->cdr();
        break;
    }
  }
}

Value list_of(std::initializer_list<Value> elems) {
  return list_of(std::vector<Value>(elems));
}

Value list_of(const std::vector<Value>& elems) {
  Value out = Value::nil();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it)
    out = Value::cons(*it, out);
  return out;
}

size_t list_length(const Value& v) {
  size_t n = 0;
  const Value* x = &v;
  while (x->is_cons()) {
    ++n;
    x = &x->cdr();
  }
  return n;
}

bool proper_listp(const Value& v) {
  const Value* x = &v;
  while (x->is_cons()) x = &x->cdr();
  return x->is_nil();
}

namespace {

bool symbol_needs_bars(const std::string& n) {
  if (n.empty()) return true;
  // A bare `::` would read back as a package prefix and be stripped.
  if (n.find("::") != std::string::npos) return true;
  for (char c : n) {
    bool plain = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                 std::string_view("+-*/<>=_?!.&$%@^~#:").find(c) != std::string_view::npos;
    if (!plain) return true;
  }
  // A name that would read back as an integer must be escaped.
  bool digits = true;
  for (size_t i = 0; i < n.size(); ++i) {
    char c = n[i];
    if (i == 0 && (c == '-' || c == '+') && n.size() > 1) continue;
    if (c < '0' || c > '9') {
      digits = false;
      break;
    }
  }
  return digits;
}

void print_rec(const Value& v, std::ostream& os) {
  switch (v.kind()) {
    case Value::Kind::Int:
      os << v.num();
      return;
    case Value::Kind::Sym: {
      const std::string& n = symbol_name(v.sym());
      if (symbol_needs_bars(n)) {
        os << '|';
        for (char c : n) {
          if (c == '|' || c == '\\') os << '\\';
          os << c;
        }
        os << '|';
      } else {
        os << n;
      }
      return;
    }
    case Value::Kind::Str: {
      os << '"';
      for (char c : v.str()) {
        if (c == '"' || c == '\\') os << '\\';
        os << c;
      }
      os << '"';
      return;
    }
    case Value::Kind::Cons: {
      os << '(';
      const Value* x = &v;
      bool first = true;
      while (x->is_cons()) {
        if (!first) os << ' ';
        print_rec(x->car(), os);
        first = false;
        x = &x->cdr();
      }
      if (!x->is_nil()) {
        os << " . ";
        print_rec(*x, os);
      }
      os << ')';
      return;
    }
  }
}

}  // namespace

std::string print_value(const Value& v) {
  std::ostringstream os;
  print_rec(v, os);
  return os.str();
}

}  // namespace termblast
