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

#include <map>
#include <string>
#include <vector>

#include "termblast/aig.hpp"

namespace termblast {

/// Tseitin encoding of a set of AIG roots. Each root is asserted by a
/// unit clause. DIMACS variables are 1-based; `input_var` maps AIG input
/// variable indices to DIMACS variables (only inputs in some root's cone
/// appear).
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::map<uint32_t, int> input_var;   // AIG input var -> DIMACS var
  std::map<uint32_t, int> node_var;    // AIG node index -> DIMACS var

  std::string to_dimacs() const;
  /// Comment lines mapping each DIMACS variable to its AIG origin.
  std::string var_map_comments() const;
};

/// Encodes the conjunction of `roots` (all asserted true).
Cnf tseitin_encode(const AigMan& m, const std::vector<Bfr>& roots);

/// DIMACS text for the conjunction of roots, with a variable-map comment
/// header.
std::string to_dimacs(const AigMan& m, const std::vector<Bfr>& roots);

}  // namespace termblast
