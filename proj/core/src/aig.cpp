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

#include "termblast/aig.hpp"

#include <algorithm>
#include <sstream>

namespace termblast {

AigMan::AigMan() {
  nodes_.push_back(Node{});  // node 0: the constant
}

Bfr AigMan::input(uint32_t var) {
  auto it = inputs_.find(var);
  if (it != inputs_.end()) return Bfr{it->second << 1};
  uint32_t idx = static_cast<uint32_t>(nodes_.size());
  Node n;
  n.is_input = true;
  n.var = var;
  n.has_var = true;
  n.max_var = var;
  nodes_.push_back(n);
  inputs_.emplace(var, idx);
  return Bfr{idx << 1};
}

Bfr AigMan::land(Bfr a, Bfr b) {
  // Constant folding and the two-level identity/complement rules.
  if (a.is_false() || b.is_false()) return bfr_false;
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  if (a == b) return a;
  if (a == !b) return bfr_false;
  if (a.lit > b.lit) std::swap(a, b);
  uint64_t key = (static_cast<uint64_t>(a.lit) << 32) | b.lit;
  auto it = unique_.find(key);
  if (it != unique_.end()) {
    ++hash_hits_;
    return Bfr{it->second << 1};
  }
  uint32_t idx = static_cast<uint32_t>(nodes_.size());
  Node n;
  n.left = a;
  n.right = b;
  const Node& la = nodes_[a.node()];
  const Node& lb = nodes_[b.node()];
  n.has_var = la.has_var || lb.has_var;
  n.max_var = std::max(la.has_var ? la.max_var : 0, lb.has_var ? lb.max_var : 0);
  nodes_.push_back(n);
  unique_.emplace(key, idx);
  ++and_count_;
  return Bfr{idx << 1};
}

bool AigMan::eval(Bfr a, const BoolEnv& env) const {
  if (a.is_const()) return a.is_true();
  // Iterative postorder with a per-call memo.
  std::vector<int8_t> memo(nodes_.size(), -1);
  memo[0] = 1;
  std::vector<uint32_t> stack{a.node()};
  while (!stack.empty()) {
    uint32_t idx = stack.back();
    const Node& n = nodes_[idx];
    if (memo[idx] >= 0) {
      stack.pop_back();
      continue;
    }
    if (n.is_input) {
      memo[idx] = env.get(n.var) ? 1 : 0;
      stack.pop_back();
      continue;
    }
    int8_t lv = memo[n.left.node()];
    int8_t rv = memo[n.right.node()];
    if (lv < 0) {
      stack.push_back(n.left.node());
      continue;
    }
    if (rv < 0) {
      stack.push_back(n.right.node());
      continue;
    }
    bool l = n.left.negated() ? !lv : lv;
    bool r = n.right.negated() ? !rv : rv;
    memo[idx] = (l && r) ? 1 : 0;
    stack.pop_back();
  }
  bool v = memo[a.node()] == 1;
  return a.negated() ? !v : v;
}

std::optional<uint32_t> AigMan::max_input_var(Bfr a) const {
  const Node& n = nodes_[a.node()];
  if (!n.has_var) return std::nullopt;
  return n.max_var;
}

std::string AigMan::to_string(Bfr a) const {
  std::ostringstream os;
  if (a.is_true()) return "T";
  if (a.is_false()) return "NIL";
  if (a.negated()) os << "!";
  const Node& n = nodes_[a.node()];
  if (n.is_input)
    os << "b" << n.var;
  else
    os << "n" << a.node();
  return os.str();
}

}  // namespace termblast
