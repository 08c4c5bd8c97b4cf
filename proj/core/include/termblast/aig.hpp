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
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace termblast {

/// A Boolean function reference: a possibly-negated edge into an AigMan,
/// or one of the two constants. Encoded as 2*node + negation; node 0 is
/// the constant-true node, so lit 0 is true and lit 1 is false.
struct Bfr {
  uint32_t lit = 1;

  constexpr uint32_t node() const { return lit >> 1; }
  constexpr bool negated() const { return lit & 1; }
  constexpr Bfr operator!() const { return Bfr{lit ^ 1}; }
  constexpr bool is_true() const { return lit == 0; }
  constexpr bool is_false() const { return lit == 1; }
  constexpr bool is_const() const { return node() == 0; }
  friend constexpr bool operator==(Bfr a, Bfr b) { return a.lit == b.lit; }
  friend constexpr bool operator!=(Bfr a, Bfr b) { return a.lit != b.lit; }
};

inline constexpr Bfr bfr_true{0};
inline constexpr Bfr bfr_false{1};

/// Total Boolean environment: input variable index -> bool, defaulting to
/// false for unmapped indices.
class BoolEnv {
 public:
  bool get(uint32_t var) const {
    auto it = m_.find(var);
    return it != m_.end() && it->second;
  }
  void set(uint32_t var, bool b) { m_[var] = b; }
  const std::unordered_map<uint32_t, bool>& entries() const { return m_; }

 private:
  std::unordered_map<uint32_t, bool> m_;
};

/// Hash-consed and-inverter graph with constant/identity folding. Nodes
/// are append-only and topologically ordered: children of node i have
/// index < i. Each input variable has at most one input node.
class AigMan {
 public:
  AigMan();

  /// Input node for variable `var` (created on first use).
  Bfr input(uint32_t var);

  Bfr land(Bfr a, Bfr b);
  Bfr lnot(Bfr a) const { return !a; }
  Bfr lor(Bfr a, Bfr b) { return !land(!a, !b); }
  Bfr lxor(Bfr a, Bfr b) { return lor(land(a, !b), land(!a, b)); }
  Bfr liff(Bfr a, Bfr b) { return !lxor(a, b); }
  Bfr lite(Bfr c, Bfr t, Bfr e) { return lor(land(c, t), land(!c, e)); }

  bool eval(Bfr a, const BoolEnv& env) const;

  /// Largest input variable index in the cone of a, if any.
  std::optional<uint32_t> max_input_var(Bfr a) const;

  size_t node_count() const { return nodes_.size(); }
  size_t and_count() const { return and_count_; }
  /// Count of unique-table hits (structural sharing) since construction.
  uint64_t hash_hits() const { return hash_hits_; }

  struct Node {
    Bfr left, right;     // valid for AND nodes
    uint32_t var = 0;    // valid for input nodes
    bool is_input = false;
    bool has_var = false;     // cone contains an input
    uint32_t max_var = 0;     // max input var in cone, if has_var
  };
  const Node& node(uint32_t idx) const { return nodes_[idx]; }
  bool is_input_node(uint32_t idx) const { return nodes_[idx].is_input; }

  std::string to_string(Bfr a) const;

 private:
  std::vector<Node> nodes_;
  std::unordered_map<uint64_t, uint32_t> unique_;
  std::unordered_map<uint32_t, uint32_t> inputs_;
  size_t and_count_ = 0;
  uint64_t hash_hits_ = 0;
};

}  // namespace termblast
