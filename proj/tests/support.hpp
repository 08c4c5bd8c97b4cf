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

#include <fstream>
#include <random>
#include <sstream>

#include "termblast/interp.hpp"
#include "termblast/prover.hpp"
#include "termblast/reader.hpp"
#include "termblast/sat.hpp"

namespace termblast::test {

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

inline std::string src_path(const std::string& rel) {
  return std::string(TERMBLAST_SOURCE_DIR) + "/" + rel;
}

/// Base database plus the events in `text`.
inline EventDb db_with(const std::string& text) {
  EventDb db = make_base_db();
  db.add_events(parse_events(text, "<test>"));
  return db;
}

inline EventDb db_with_files(const std::vector<std::string>& rel_paths,
                             const std::string& extra = "") {
  EventDb db = make_base_db();
  for (const std::string& p : rel_paths)
    db.add_events(parse_events(read_file(src_path(p)), p));
  if (!extra.empty()) db.add_events(parse_events(extra, "<test>"));
  return db;
}

inline Term tparse(const std::string& text) {
  auto forms = read_all(text);
  if (forms.size() != 1) throw std::runtime_error("expected one form");
  return parse_term(forms[0]);
}

inline Value vparse(const std::string& text) {
  auto forms = read_all(text);
  if (forms.size() != 1) throw std::runtime_error("expected one form");
  return forms[0];
}

inline Value veval(const std::string& text, const EventDb& db,
                   const ValueBindings& bindings = {}) {
  return eval_term(tparse(text), bindings, db);
}

/// Self-contained interpretation session for interpreter-level tests.
struct Session {
  EventDb db;
  AigMan aig;
  BvarDb bvars;
  InterpState st;

  explicit Session(EventDb d, uint32_t base = 0)
      : db(std::move(d)), bvars(base), st(aig, bvars, db) {}

  SymObj interp(const std::string& text, const SymBindings& bindings = {},
                EquivCtx ctx = EquivCtx::Equal) {
    return interp_term(tparse(text), bindings, ctx, st);
  }
};

/// Random concrete values for oracle fuzzing.
inline Value random_value(std::mt19937_64& rng, int depth = 0) {
  std::uniform_int_distribution<int> pick(0, depth < 2 ? 7 : 4);
  switch (pick(rng)) {
    case 0:
      return Value::nil();
    case 1:
      return Value::t();
    case 2: {
      std::uniform_int_distribution<long> d(-100, 100);
      return Value::integer(d(rng));
    }
    case 3: {
      static const char* names[] = {":A", ":B", ":C", ":FLD", "FOO", "BAR", "X"};
      std::uniform_int_distribution<int> d(0, 6);
      return Value::symbol(names[d(rng)]);
    }
    case 4: {
      std::uniform_int_distribution<int> d(0, 3);
      static const char* strs[] = {"", "a", "hi there", "\"q\""};
      return Value::string(strs[d(rng)]);
    }
    default:
      return Value::cons(random_value(rng, depth + 1), random_value(rng, depth + 1));
  }
}

/// Random AIG formula paired with an independent semantic oracle
/// (std::function tree evaluated directly), for sat/eval cross-checks.
struct RandomFormula {
  Bfr bfr;
  std::function<bool(const BoolEnv&)> oracle;
};

inline RandomFormula random_formula(AigMan& m, std::mt19937_64& rng, int num_vars,
                                    int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  switch (pick(rng)) {
    case 0: {
      std::uniform_int_distribution<int> c(0, 1);
      bool t = c(rng) == 1;
      return {t ? bfr_true : bfr_false, [t](const BoolEnv&) { return t; }};
    }
    case 1: {
      std::uniform_int_distribution<int> v(0, num_vars - 1);
      uint32_t var = static_cast<uint32_t>(v(rng));
      return {m.input(var), [var](const BoolEnv& e) { return e.get(var); }};
    }
    case 2: {
      RandomFormula a = random_formula(m, rng, num_vars, depth - 1);
      return {!a.bfr, [a](const BoolEnv& e) { return !a.oracle(e); }};
    }
    case 3: {
      RandomFormula a = random_formula(m, rng, num_vars, depth - 1);
      RandomFormula b = random_formula(m, rng, num_vars, depth - 1);
      return {m.land(a.bfr, b.bfr),
              [a, b](const BoolEnv& e) { return a.oracle(e) && b.oracle(e); }};
    }
    case 4: {
      RandomFormula a = random_formula(m, rng, num_vars, depth - 1);
      RandomFormula b = random_formula(m, rng, num_vars, depth - 1);
      return {m.lor(a.bfr, b.bfr),
              [a, b](const BoolEnv& e) { return a.oracle(e) || b.oracle(e); }};
    }
    default: {
      RandomFormula a = random_formula(m, rng, num_vars, depth - 1);
      RandomFormula b = random_formula(m, rng, num_vars, depth - 1);
      return {m.lxor(a.bfr, b.bfr),
              [a, b](const BoolEnv& e) { return a.oracle(e) != b.oracle(e); }};
    }
  }
}

/// Exhaustive truth-table satisfiability over input vars [0, num_vars).
inline std::optional<BoolEnv> enumerate_sat(const AigMan& m, Bfr a, int num_vars) {
  for (uint64_t bits = 0; bits < (1ULL << num_vars); ++bits) {
    BoolEnv env;
    for (int v = 0; v < num_vars; ++v) env.set(v, (bits >> v) & 1);
    if (m.eval(a, env)) return env;
  }
  return std::nullopt;
}

/// Minimal DPLL over DIMACS clauses: the independent check for CNF
/// exports. Intentionally shares nothing with the CDCL implementation.
inline bool dpll_sat(std::vector<std::vector<int>> clauses, std::map<int, bool> asn,
                     int num_vars) {
  // Unit propagation.
  for (;;) {
    bool changed = false;
    for (const auto& c : clauses) {
      int unassigned = 0;
      int unit = 0;
      bool sat = false;
      for (int lit : c) {
        auto it = asn.find(std::abs(lit));
        if (it == asn.end()) {
          ++unassigned;
          unit = lit;
        } else if (it->second == (lit > 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        asn[std::abs(unit)] = unit > 0;
        changed = true;
      }
    }
    if (!changed) break;
  }
  int branch = 0;
  for (int v = 1; v <= num_vars; ++v) {
    if (!asn.count(v)) {
      branch = v;
      break;
    }
  }
  if (branch == 0) return true;
  auto with = asn;
  with[branch] = true;
  if (dpll_sat(clauses, with, num_vars)) return true;
  asn[branch] = false;
  return dpll_sat(clauses, asn, num_vars);
}

/// Parses DIMACS text (as produced by to_dimacs) into clauses.
inline std::pair<int, std::vector<std::vector<int>>> parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      size_t nclauses;
      ls >> p >> cnf >> num_vars >> nclauses;
      continue;
    }
    std::vector<int> clause;
    int lit;
    while (ls >> lit && lit != 0) clause.push_back(lit);
    if (!clause.empty()) clauses.push_back(clause);
  }
  return {num_vars, clauses};
}

}  // namespace termblast::test
