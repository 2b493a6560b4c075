#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "aeff/audit.hpp"
#include "aeff/explorer.hpp"
#include "aeff/measures.hpp"
#include "aeff/surface.hpp"
#include "aeff/typecheck.hpp"

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(AEFF_CORPUS_DIR) + "/" + name + ".aeff");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_ParsePretty(benchmark::State& state) {
  const std::string text = slurp("server");
  for (auto _ : state) {
    auto prog = aeff::parse_program(text);
    benchmark::DoNotOptimize(aeff::pretty(prog));
  }
}
BENCHMARK(BM_ParsePretty);

void BM_InferEffects(benchmark::State& state) {
  auto prog = aeff::parse_program(slurp("seq-effect-typed"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(aeff::infer_effects(prog.signature, {}, prog.computation()));
  }
}
BENCHMARK(BM_InferEffects);

// m1 grows by one spine per step, so the cost is quadratic in the budget.
void BM_ExploreM1(benchmark::State& state) {
  auto prog = aeff::parse_program(slurp("m1"));
  for (auto _ : state) {
    auto ex = aeff::explore(prog.computation(), static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(ex.verdict.kind);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExploreM1)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_ExploreRelay(benchmark::State& state) {
  auto prog = aeff::parse_program(slurp("proc-relay"));
  for (auto _ : state) {
    auto ex = aeff::explore(prog.process());
    benchmark::DoNotOptimize(ex.verdict.kind);
  }
}
BENCHMARK(BM_ExploreRelay);

void BM_AuditOpcallPair(benchmark::State& state) {
  auto prog = aeff::parse_program(slurp("opcall-pair"));
  for (auto _ : state) {
    auto report = aeff::audit_lex_decrease(prog.process(), prog.signature);
    benchmark::DoNotOptimize(report.quiescent);
  }
}
BENCHMARK(BM_AuditOpcallPair);

void BM_MaxSh(benchmark::State& state) {
  auto prog = aeff::parse_program(slurp("proc-three-way"));
  auto shape = aeff::shape_of(prog.process());
  for (auto _ : state) benchmark::DoNotOptimize(aeff::max_sh(shape));
}
BENCHMARK(BM_MaxSh);

}  // namespace

BENCHMARK_MAIN();
