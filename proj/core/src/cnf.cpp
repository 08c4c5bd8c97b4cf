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

#include "termblast/cnf.hpp"

#include <sstream>

namespace termblast {

Cnf tseitin_encode(const AigMan& m, const std::vector<Bfr>& roots) {
  Cnf out;

  bool any_false = false;
  std::vector<Bfr> live;
  for (Bfr r : roots) {
    if (r.is_false()) any_false = true;
    else if (!r.is_true()) live.push_back(r);
  }
  if (any_false) {
    out.num_vars = 1;
    out.clauses = {{1}, {-1}};
    return out;
  }
  if (live.empty()) {
    // Degenerate all-true instance: one free variable, one satisfiable unit.
    out.num_vars = 1;
    out.clauses = {{1}};
    return out;
  }

  // Collect the cone in topological (node index) order.
  std::vector<uint32_t> cone;
  {
    std::vector<uint32_t> stack;
    std::map<uint32_t, bool> seen;
    for (Bfr r : live) stack.push_back(r.node());
    while (!stack.empty()) {
      uint32_t idx = stack.back();
      stack.pop_back();
      if (seen[idx]) continue;
      seen[idx] = true;
      cone.push_back(idx);
      const AigMan::Node& n = m.node(idx);
      if (!n.is_input) {
        stack.push_back(n.left.node());
        stack.push_back(n.right.node());
      }
    }
  }

  auto var_of = [&](uint32_t idx) { return out.node_var.at(idx); };
  for (uint32_t idx : cone) {
    int v = ++out.num_vars;
    out.node_var[idx] = v;
    if (m.node(idx).is_input) out.input_var[m.node(idx).var] = v;
  }

  auto lit_of = [&](Bfr b) {
    int v = var_of(b.node());
    return b.negated() ? -v : v;
  };

  for (uint32_t idx : cone) {
    const AigMan::Node& n = m.node(idx);
    if (n.is_input) continue;
    int v = var_of(idx);
    int l = lit_of(n.left);
    int r = lit_of(n.right);
    out.clauses.push_back({-v, l});
    out.clauses.push_back({-v, r});
    out.clauses.push_back({v, -l, -r});
  }
  for (Bfr root : live) out.clauses.push_back({lit_of(root)});
  return out;
}

std::string Cnf::var_map_comments() const {
  std::ostringstream os;
  for (const auto& [node, v] : node_var) os << "c node " << node << " = " << v << "\n";
  for (const auto& [in, v] : input_var) os << "c input " << in << " = " << v << "\n";
  return os.str();
}

std::string Cnf::to_dimacs() const {
  std::ostringstream os;
  os << "p cnf " << num_vars << " " << clauses.size() << "\n";
  for (const auto& c : clauses) {
    for (int l : c) os << l << " ";
    os << "0\n";
  }
  return os.str();
}

std::string to_dimacs(const AigMan& m, const std::vector<Bfr>& roots) {
  Cnf cnf = tseitin_encode(m, roots);
  return cnf.var_map_comments() + cnf.to_dimacs();
}

}  // namespace termblast
