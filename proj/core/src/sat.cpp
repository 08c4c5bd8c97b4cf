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

#include "termblast/sat.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "termblast/cnf.hpp"

namespace termblast {

namespace {

constexpr uint32_t kNoReason = UINT32_MAX;

// Luby restart sequence (Luby, Sinclair, Zuckerman).
uint64_t luby(uint64_t i) {
  uint64_t k = 1;
  while ((1ULL << k) - 1 < i + 1) ++k;
  while ((1ULL << k) - 1 != i + 1) {
    --k;
    i = i - ((1ULL << k) - 1);
  }
  return 1ULL << (k - 1);
}

}  // namespace

CdclSolver::CdclSolver(int num_vars)
    : nvars_(num_vars),
      watches_(2 * static_cast<size_t>(num_vars)),
      assign_(num_vars, -1),
      phase_(num_vars, 0),
      reason_(num_vars, kNoReason),
      level_(num_vars, 0),
      activity_(num_vars, 0.0) {}

int CdclSolver::ilit(int dimacs) {
  int v = std::abs(dimacs) - 1;
  return 2 * v + (dimacs < 0 ? 1 : 0);
}

int CdclSolver::value_lit(int lit) const {
  int8_t a = assign_[lit >> 1];
  if (a < 0) return -1;
  return (a ^ (lit & 1)) ? 1 : 0;
}

void CdclSolver::add_clause(const std::vector<int>& dimacs) {
  if (!ok_) return;
  std::vector<int> lits;
  for (int dl : dimacs) lits.push_back(ilit(dl));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i) {
    if ((lits[i] ^ 1) == lits[i + 1]) return;  // tautology
  }
  if (lits.empty()) {
    ok_ = false;
    return;
  }
  clauses_.push_back(Clause{std::move(lits)});
}

void CdclSolver::attach(uint32_t cref) {
  // Unit clauses are enqueued permanently at level 0 and never watched.
  const Clause& c = clauses_[cref];
  if (c.lits.size() < 2) return;
  watches_[c.lits[0] ^ 1].push_back({cref, c.lits[1]});
  watches_[c.lits[1] ^ 1].push_back({cref, c.lits[0]});
}

void CdclSolver::enqueue(int lit, uint32_t reason) {
  int v = lit >> 1;
  assign_[v] = (lit & 1) ? 0 : 1;
  reason_[v] = reason;
  level_[v] = static_cast<int>(trail_lim_.size());
  trail_.push_back(lit);
}

bool CdclSolver::propagate(uint32_t& confl) {
  while (qhead_ < trail_.size()) {
    int p = trail_[qhead_++];
    ++stats_.propagations;
    std::vector<Watcher>& ws = watches_[p];  // clauses watching ¬p
    size_t i = 0, j = 0;
    bool conflict = false;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (value_lit(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = clauses_[w.cref];
      int false_lit = p ^ 1;
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      // Invariant: c.lits[1] == false_lit.
      if (value_lit(c.lits[0]) == 1) {
        ws[i].blocker = c.lits[0];
        ws[j++] = ws[i++];
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < c.lits.size(); ++k) {
        if (value_lit(c.lits[k]) != 0) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1] ^ 1].push_back({w.cref, c.lits[0]});
          moved = true;
          break;
        }
      }
      if (moved) {
        ++i;  // clause left this watch list
        continue;
      }
      // Unit or conflicting on lits[0].
      if (value_lit(c.lits[0]) == 0) {
        confl = w.cref;
        conflict = true;
        while (i < ws.size()) ws[j++] = ws[i++];
        break;
      }
      enqueue(c.lits[0], w.cref);
      ws[j++] = ws[i++];
    }
    ws.resize(j);
    if (conflict) return false;
  }
  return true;
}

void CdclSolver::bump(int var) {
  activity_[var] += var_inc_;
  if (activity_[var] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void CdclSolver::analyze(uint32_t confl, std::vector<int>& learnt, int& bt_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  std::vector<bool> seen(nvars_, false);
  int counter = 0;
  int p = -1;
  size_t idx = trail_.size();
  int cur_level = static_cast<int>(trail_lim_.size());

  uint32_t reason = confl;
  for (;;) {
    const Clause& c = clauses_[reason];
    for (int q : c.lits) {
      if (p != -1 && q == p) continue;
      int v = q >> 1;
      if (!seen[v] && level_[v] > 0) {
        seen[v] = true;
        bump(v);
        if (level_[v] >= cur_level)
          ++counter;
        else
          learnt.push_back(q);
      }
    }
    // Find next literal on the trail seen at current level.
    do {
      --idx;
    } while (!seen[trail_[idx] >> 1]);
    p = trail_[idx];
    seen[p >> 1] = false;
    --counter;
    if (counter == 0) break;
    reason = reason_[p >> 1];
  }
  learnt[0] = p ^ 1;

  if (learnt.size() == 1) {
    bt_level = 0;
  } else {
    // Backtrack to the second-highest level in the clause.
    size_t max_i = 1;
    for (size_t i = 2; i < learnt.size(); ++i)
      if (level_[learnt[i] >> 1] > level_[learnt[max_i] >> 1]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level_[learnt[1] >> 1];
  }
  var_inc_ /= 0.95;
}

void CdclSolver::cancel_until(int level) {
  if (static_cast<int>(trail_lim_.size()) <= level) return;
  size_t bound = trail_lim_[level];
  for (size_t i = trail_.size(); i-- > bound;) {
    int v = trail_[i] >> 1;
    phase_[v] = assign_[v];
    assign_[v] = -1;
    reason_[v] = kNoReason;
  }
  trail_.resize(bound);
  trail_lim_.resize(level);
  qhead_ = bound;
}

int CdclSolver::pick_branch() {
  int best = -1;
  double best_act = -1.0;
  for (int v = 0; v < nvars_; ++v) {
    if (assign_[v] < 0 && activity_[v] > best_act) {
      best = v;
      best_act = activity_[v];
    }
  }
  if (best < 0) return -1;
  return 2 * best + (phase_[best] ? 0 : 1);
}

SatVerdict CdclSolver::solve(uint64_t conflict_budget) {
  if (!ok_) return SatVerdict::Unsat;

  // Attach watches; enqueue unit clauses at level 0.
  for (uint32_t i = 0; i < clauses_.size(); ++i) {
    const Clause& c = clauses_[i];
    if (c.lits.size() == 1) {
      int val = value_lit(c.lits[0]);
      if (val == 0) return SatVerdict::Unsat;
      if (val == -1) enqueue(c.lits[0], kNoReason);
    }
    attach(i);
  }

  uint64_t restart_count = 0;
  uint64_t conflicts_until_restart = luby(restart_count) * 100;

  for (;;) {
    uint32_t confl = kNoReason;
    if (!propagate(confl)) {
      ++stats_.conflicts;
      if (trail_lim_.empty()) return SatVerdict::Unsat;
      std::vector<int> learnt;
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      uint32_t cref = static_cast<uint32_t>(clauses_.size());
      clauses_.push_back(Clause{learnt});
      attach(cref);
      enqueue(learnt[0], learnt.size() == 1 ? kNoReason : cref);
      if (conflict_budget > 0 && stats_.conflicts >= conflict_budget)
        return SatVerdict::Unknown;
      if (conflicts_until_restart > 0) --conflicts_until_restart;
      continue;
    }
    if (conflicts_until_restart == 0) {
      ++stats_.restarts;
      ++restart_count;
      conflicts_until_restart = luby(restart_count) * 100;
      cancel_until(0);
      continue;
    }
    int next = pick_branch();
    if (next < 0) return SatVerdict::Sat;
    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

bool CdclSolver::model_value(int var) const {
  int8_t a = assign_[var - 1];
  return a == 1;
}

SatResult sat_check(const AigMan& m, Bfr root, const std::vector<Bfr>& assumptions,
                    uint64_t conflict_budget) {
  std::vector<Bfr> roots{root};
  roots.insert(roots.end(), assumptions.begin(), assumptions.end());

  SatResult out;
  for (Bfr r : roots) {
    if (r.is_false()) {
      out.verdict = SatVerdict::Unsat;
      return out;
    }
  }

  Cnf cnf = tseitin_encode(m, roots);
  CdclSolver solver(cnf.num_vars);
  for (const auto& c : cnf.clauses) solver.add_clause(c);
  out.verdict = solver.solve(conflict_budget);
  out.stats = solver.stats();
  if (out.verdict == SatVerdict::Sat) {
    for (const auto& [aig_var, dv] : cnf.input_var)
      out.model.set(aig_var, solver.model_value(dv));
  }
  return out;
}

}  // namespace termblast
