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

#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "termblast/prover.hpp"
#include "termblast/reader.hpp"
#include "termblast/sat.hpp"

namespace {

using namespace termblast;

std::string slurp(const std::string& rel) {
  std::ifstream f(std::string(TERMBLAST_SOURCE_DIR) + "/" + rel);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

EventDb records_db() {
  EventDb db = make_base_db();
  db.add_events(parse_events(slurp("theories/records.gl")));
  return db;
}

TheoremEvent thm(const std::string& text) {
  return std::get<TheoremEvent>(parse_events(text).at(0));
}

void BM_AigConstruction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    AigMan m;
    std::mt19937_64 rng(1);
    std::vector<Bfr> pool;
    for (int v = 0; v < 16; ++v) pool.push_back(m.input(v));
    for (int i = 0; i < n; ++i) {
      Bfr a = pool[rng() % pool.size()];
      Bfr b = pool[rng() % pool.size()];
      pool.push_back(rng() & 1 ? m.land(a, b) : m.lor(a, !b));
    }
    benchmark::DoNotOptimize(m.node_count());
  }
}
BENCHMARK(BM_AigConstruction)->Arg(1000)->Arg(10000);

void BM_SatAdderAssoc(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  std::ostringstream thm_text;
  thm_text << "(def-gl-thm assoc :hyp t"
           << " :concl (equal (+ a (+ b c)) (+ (+ a b) c))"
           << " :g-bindings ((a (g-int 0 1 " << bits << "))"
           << " (b (g-int " << bits << " 1 " << bits << "))"
           << " (c (g-int " << 2 * bits << " 1 " << bits << "))))";
  EventDb db = make_base_db();
  TheoremEvent t = thm(thm_text.str());
  for (auto _ : state) {
    ProofResult r = prove(t, db, {});
    if (r.verdict != Verdict::Proved) state.SkipWithError("not proved");
  }
}
BENCHMARK(BM_SatAdderAssoc)->Arg(8)->Arg(16)->Arg(24);

void BM_ProveRecordsEquality(benchmark::State& state) {
  EventDb db = records_db();
  TheoremEvent t = thm(
      "(def-gl-thm reorder :hyp t"
      " :concl (equal (s :a x (s :b y r)) (s :b y (s :a x r)))"
      " :g-bindings nil)");
  for (auto _ : state) {
    ProofResult r = prove(t, db, {});
    if (r.verdict != Verdict::Proved) state.SkipWithError("not proved");
  }
}
BENCHMARK(BM_ProveRecordsEquality);

void BM_EvalRecordNest(benchmark::State& state) {
  EventDb db = make_base_db();
  const int n = static_cast<int>(state.range(0));
  // (g :k0 (s :k0 0 (s :k1 1 ... nil)))
  std::ostringstream os;
  os << "(g ':k0 ";
  for (int i = 0; i < n; ++i) os << "(s ':k" << i << " '" << i << " ";
  os << "'nil";
  for (int i = 0; i < n; ++i) os << ")";
  os << ")";
  auto forms = read_all(os.str());
  Term t = parse_term(forms[0]);
  for (auto _ : state) {
    Value v = eval_term(t, {}, db);
    benchmark::DoNotOptimize(v.truthy());
  }
}
BENCHMARK(BM_EvalRecordNest)->Arg(8)->Arg(64);

void BM_InterpLogheadUnroll(benchmark::State& state) {
  EventDb db = make_base_db();
  db.add_events(parse_events(slurp("theories/bitblast.gl")));
  const int width = static_cast<int>(state.range(0));
  std::ostringstream os;
  os << "(def-gl-thm widehead :hyp t"
     << " :concl (equal (lognot (lognot (loghead " << width << " x)))"
     << " (loghead " << width << " x)) :g-bindings nil)";
  TheoremEvent t = thm(os.str());
  for (auto _ : state) {
    ProofResult r = prove(t, db, {});
    if (r.verdict != Verdict::Proved) state.SkipWithError("not proved");
  }
}
BENCHMARK(BM_InterpLogheadUnroll)->Arg(5)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
