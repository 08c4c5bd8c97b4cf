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

#include "termblast/prover.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "termblast/cnf.hpp"
#include "termblast/reader.hpp"
#include "termblast/sat.hpp"

namespace termblast {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Proved:
      return "PROVED";
    case Verdict::Failed:
      return "FAILED";
    case Verdict::FailedUnverified:
      return "FAILED-UNVERIFIED";
    case Verdict::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

EventDb make_base_db() {
  EventDb db;
  load_prelude(db);
  register_shapespec_natives(db);
  db.register_native(syms().RANDOM_INT, 1, [](const std::vector<Value>& args, EvalCtx& ctx) {
    if (!ctx.rng) throw EvalError("random-int used outside a sampling context");
    if (!args[0].is_integer() || mpz_sgn(args[0].num().get_mpz_t()) < 0 ||
        !args[0].num().fits_ulong_p() || args[0].num().get_ui() > 62)
      throw EvalError("random-int width must be in [0, 62]");
    unsigned long k = args[0].num().get_ui();
    uint64_t bound = 1ULL << k;
    std::uniform_int_distribution<uint64_t> dist(0, bound - 1);
    return Value::integer(mpz_class(static_cast<long>(dist(*ctx.rng))));
  });
  return db;
}

namespace {

std::vector<SymbolId> theorem_vars(const TheoremEvent& thm) {
  std::set<SymbolId> vars = free_vars(thm.hyp);
  std::set<SymbolId> cv = free_vars(thm.concl);
  vars.insert(cv.begin(), cv.end());
  return {vars.begin(), vars.end()};
}

// Random concrete values for the default coverage sampler.
Value random_value(std::mt19937_64& rng, int depth = 0) {
  std::uniform_int_distribution<int> pick(0, depth < 2 ? 6 : 4);
  switch (pick(rng)) {
    case 0:
      return Value::nil();
    case 1:
      return Value::t();
    case 2: {
      std::uniform_int_distribution<long> d(-64, 64);
      return Value::integer(d(rng));
    }
    case 3: {
      static const char* names[] = {":A", ":B", ":C", "FOO", "BAR"};
      std::uniform_int_distribution<int> d(0, 4);
      return Value::symbol(names[d(rng)]);
    }
    case 4: {
      std::uniform_int_distribution<long> d(0, 511);
      return Value::integer(d(rng));
    }
    default:
      return Value::cons(random_value(rng, depth + 1), random_value(rng, depth + 1));
  }
}

std::vector<ValueBindings> generate_samples(const TheoremEvent& thm,
                                            const std::vector<SymbolId>& vars,
                                            const EventDb& db, const ProveConfig& config,
                                            std::vector<std::string>& notes) {
  std::vector<ValueBindings> out;
  std::mt19937_64 rng(config.seed ^ 0x5eedc0de);
  size_t want = config.cov_samples;
  size_t tries = 0, max_tries = want * 200 + 200;
  while (out.size() < want && tries++ < max_tries) {
    ValueBindings sample;
    for (SymbolId v : vars) sample[v] = Value::nil();
    try {
      if (thm.cov_samples) {
        EvalCtx ctx(db);
        ctx.rng = &rng;
        Value alist = eval_term(*thm.cov_samples, {}, ctx);
        for (const Value* p = &alist; p->is_cons(); p = &p->cdr()) {
          const Value& pair = p->car();
          if (pair.is_cons() && pair.car().is_symbol())
            sample[pair.car().sym()] = pair.cdr();
        }
      } else {
        for (SymbolId v : vars) sample[v] = random_value(rng);
      }
      if (eval_term(thm.hyp, sample, db).truthy()) out.push_back(std::move(sample));
    } catch (const EvalError&) {
      // skip unevaluable samples
    }
  }
  if (out.size() < want)
    notes.push_back("coverage sampling kept " + std::to_string(out.size()) + "/" +
                    std::to_string(want) + " candidates (low hypothesis acceptance)");
  return out;
}

}  // namespace

ProofResult prove(const TheoremEvent& thm, const EventDb& db, const ProveConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  ProofResult result;
  result.name = thm.name;

  GBindings specs = parse_g_bindings(thm.g_bindings_raw);
  std::vector<SymbolId> vars = theorem_vars(thm);

  uint32_t base = 0;
  for (const auto& [var, spec] : specs)
    for (uint32_t i : spec.indices()) base = std::max(base, i + 1);

  AigMan aig;
  BvarDb bvars(base);
  InterpState st(aig, bvars, db);
  st.limits = config.limits;

  std::ostringstream trace_out;
  if (config.trace_rewrites)
    st.trace = [&trace_out](const std::string& line) { trace_out << line << "\n"; };
  st.warn = [&result](const std::string& w) { result.notes.push_back(w); };

  SymBindings bindings;
  for (const auto& [var, spec] : specs) bindings[var] = spec_to_sobj(spec, aig);
  for (SymbolId v : vars)
    if (!bindings.count(v)) bindings[v] = SymObj::var(v);

  // Hypothesis first: its Boolean function becomes the path condition, so
  // hyp-derived variables and constraints are visible to the conclusion.
  SymObj hyp_obj = interp_term(thm.hyp, bindings, EquivCtx::Iff, st);
  Bfr hyp_bfr = simplify_if_test(hyp_obj, st);
  st.pathcond = hyp_bfr;
  SymObj concl_obj = interp_term(thm.concl, bindings, EquivCtx::Iff, st);
  Bfr concl_bfr = simplify_if_test(concl_obj, st);

  if (!config.dimacs_dir.empty()) {
    std::filesystem::create_directories(config.dimacs_dir);
    std::string path = config.dimacs_dir + "/" + symbol_name(thm.name) + ".cnf";
    std::ofstream f(path);
    if (f) {
      f << to_dimacs(aig, {!concl_bfr, hyp_bfr, bvars.constraints()});
      result.notes.push_back("validity query exported to " + path);
    } else {
      result.notes.push_back("could not write DIMACS file " + path);
    }
  }

  if (config.export_only) {
    result.verdict = Verdict::Unknown;
    result.notes.push_back("export-only mode: the embedded SAT check was skipped");
  }

  SatResult sat;
  if (!config.export_only)
    sat = sat_check(aig, !concl_bfr, {hyp_bfr, bvars.constraints()},
                    config.final_sat_budget);
  result.stats.sat_conflicts = sat.stats.conflicts;

  switch (config.export_only ? SatVerdict::Unknown : sat.verdict) {
    case SatVerdict::Unsat:
      result.verdict = Verdict::Proved;
      break;
    case SatVerdict::Unknown:
      result.verdict = Verdict::Unknown;
      break;
    case SatVerdict::Sat: {
      result.ctrex = model_to_assignment(sat.model, bvars, aig, specs, vars,
                                         db.ctrex_rules(), db);
      result.ctrex_verdict =
          verify_ctrex(result.ctrex, thm.hyp, thm.concl, bvars, sat.model, aig, db);
      result.verdict =
          result.ctrex_verdict.real ? Verdict::Failed : Verdict::FailedUnverified;
      break;
    }
  }

  // Coverage obligations for every explicit binding (nil bindings are
  // self-named term variables and carry none).
  if (!specs.empty()) {
    std::vector<ValueBindings> samples =
        generate_samples(thm, vars, db, config, result.notes);
    for (const auto& [var, spec] : specs) {
      CoverageGoal goal;
      goal.var = var;
      goal.oblig = oblig_term(spec, Term::var(var));
      goal.samples = check_oblig_on(spec, var, samples, db);
      result.coverage.push_back(std::move(goal));
    }
  }

  if (config.dump_bvar_db) result.bvar_dump = bvars.dump(aig);
  result.trace = trace_out.str();
  result.stats.aig_nodes = aig.node_count();
  result.stats.bvars = bvars.size();
  result.stats.constraints = bvars.constraint_count();
  result.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

std::string format_result(const ProofResult& r) {
  std::ostringstream os;
  os << "THEOREM " << symbol_name(r.name) << ": " << verdict_name(r.verdict);
  if (r.verdict == Verdict::Failed)
    os << " (verified counterexample)";
  else if (r.verdict == Verdict::FailedUnverified)
    os << " (false counterexample: " << r.ctrex_verdict.reason << ")";
  os << "\n  stats: nodes=" << r.stats.aig_nodes << " bvars=" << r.stats.bvars
     << " constraints=" << r.stats.constraints << " conflicts=" << r.stats.sat_conflicts
     << " ms=" << static_cast<long>(r.stats.wall_ms) << "\n";
  if (r.verdict == Verdict::Failed || r.verdict == Verdict::FailedUnverified) {
    for (const auto& [var, val] : r.ctrex.vars)
      os << "  " << symbol_name(var) << " = " << print_value(val) << "\n";
    for (const std::string& u : r.ctrex.unresolved) os << "  unresolved: " << u << "\n";
    for (const EnvDisagreement& d : r.ctrex_verdict.disagreements) {
      os << "  model disagreement: bvar " << d.index << " model="
         << (d.model_value ? "T" : "NIL") << " eval=" << (d.eval_value ? "T" : "NIL")
         << "\n";
    }
  }
  for (const CoverageGoal& g : r.coverage) {
    os << "COVERAGE OBLIGATION (" << symbol_name(r.name) << "/" << symbol_name(g.var)
       << "):\n  " << print_term(g.oblig) << "\n";
    if (g.samples.vacuous)
      os << "  samples: none (vacuous pass; supply :cov-samples)\n";
    else
      os << "  samples: " << g.samples.passed << "/" << g.samples.total << " passed\n";
    for (const std::string& f : g.samples.failures) os << "  " << f << "\n";
  }
  for (const std::string& n : r.notes) os << "  note: " << n << "\n";
  if (!r.bvar_dump.empty()) os << r.bvar_dump;
  return os.str();
}

std::string format_summary_line(const ProofResult& r) {
  std::ostringstream os;
  os << "thm=" << symbol_name(r.name) << " verdict=" << verdict_name(r.verdict)
     << " nodes=" << r.stats.aig_nodes << " bvars=" << r.stats.bvars
     << " constraints=" << r.stats.constraints << " conflicts=" << r.stats.sat_conflicts
     << " ms=" << static_cast<long>(r.stats.wall_ms);
  return os.str();
}

FileResult run_file(const std::string& path, const ProveConfig& config, std::ostream& out,
                    bool print_rules) {
  EventDb db = make_base_db();
  return run_file(path, config, out, db, print_rules);
}

FileResult run_file(const std::string& path, const ProveConfig& config, std::ostream& out,
                    EventDb& db, bool print_rules) {
  FileResult fr;
  std::ifstream f(path);
  if (!f) {
    out << "error: cannot open " << path << "\n";
    fr.tool_error = true;
    return fr;
  }
  std::stringstream buf;
  buf << f.rdbuf();

  try {
    std::vector<Event> events = parse_events(buf.str(), path);
    for (const Event& e : events) {
      if (const auto* thm = std::get_if<TheoremEvent>(&e)) {
        ProofResult r = prove(*thm, db, config);
        if (!r.trace.empty()) out << r.trace;
        out << format_result(r);
        if (!config.export_only && !r.matches(thm->expect)) {
          fr.ok = false;
          out << "  (unexpected: wanted "
              << (thm->expect == Expectation::Prove
                      ? "PROVED"
                      : thm->expect == Expectation::Fail ? "FAILED" : "FAILED-UNVERIFIED")
              << ")\n";
        }
        fr.results.push_back(std::move(r));
      } else {
        db.add_event(e);
      }
    }
    if (print_rules) out << db.dump();
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    fr.tool_error = true;
  }
  return fr;
}

int run_files(const std::vector<std::string>& paths, const ProveConfig& config,
              std::ostream& out, bool print_rules, unsigned jobs) {
  bool all_ok = true;
  bool tool_error = false;

  if (jobs <= 1 || paths.size() <= 1) {
    EventDb db = make_base_db();
    for (const std::string& p : paths) {
      if (paths.size() > 1) out << "== " << p << " ==\n";
      FileResult fr = run_file(p, config, out, db, print_rules);
      all_ok = all_ok && fr.ok;
      tool_error = tool_error || fr.tool_error;
      if (fr.tool_error) break;
    }
  } else {
    std::vector<std::string> outputs(paths.size());
    std::vector<FileResult> results(paths.size());
    std::mutex mu;
    size_t next = 0;
    auto worker = [&]() {
      for (;;) {
        size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= paths.size()) return;
          i = next++;
        }
        std::ostringstream os;
        results[i] = run_file(paths[i], config, os, print_rules);
        outputs[i] = os.str();
      }
    };
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < std::min<size_t>(jobs, paths.size()); ++i)
      threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    for (size_t i = 0; i < paths.size(); ++i) {
      out << "== " << paths[i] << " ==\n" << outputs[i];
      all_ok = all_ok && results[i].ok;
      tool_error = tool_error || results[i].tool_error;
    }
  }
  if (tool_error) return 2;
  return all_ok ? 0 : 1;
}

}  // namespace termblast
