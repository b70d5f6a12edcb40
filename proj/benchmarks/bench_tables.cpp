#include <benchmark/benchmark.h>

#include "picky/catalog.hpp"
#include "picky/chartab.hpp"
#include "picky/picky.hpp"
#include "picky/subgroups.hpp"
#include "picky/verify.hpp"

using namespace picky;

namespace {

const char* const kTableGroups[] = {"S4", "SL(2,3)", "GL(2,3)", "A5", "D20", "3^1+2:2"};

// Uncached Dixon tables.
void BM_CharacterTable(benchmark::State& state) {
  const auto g = named_group(kTableGroups[state.range(0)]);
  state.SetLabel(kTableGroups[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(CharacterTable::compute(g));
}
BENCHMARK(BM_CharacterTable)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_IsPicky(benchmark::State& state) {
  const auto g = named_group("GL(2,3)");
  const auto x = sylow(g, 3).generators().front();
  for (auto _ : state) benchmark::DoNotOptimize(is_picky(g, 3, x));
}
BENCHMARK(BM_IsPicky)->Unit(benchmark::kMicrosecond);

// Full check with warm table memo, all matching modes.
void BM_CheckAllModes(benchmark::State& state) {
  const auto g = named_group("SL(2,3)");
  const auto x = sylow(g, 3).generators().front();
  benchmark::DoNotOptimize(check_theorem_A(g, 3, x));
  for (auto _ : state) benchmark::DoNotOptimize(check_theorem_A(g, 3, x));
}
BENCHMARK(BM_CheckAllModes)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
