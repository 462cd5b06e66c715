#include <benchmark/benchmark.h>

#include "ukoszul/graphs.hpp"
#include "ukoszul/ideals.hpp"
#include "ukoszul/qalg.hpp"
#include "ukoszul/resolve.hpp"

using namespace ukoszul;

static void BM_BuildExterior(benchmark::State& state) {
  PrimeField f(3);
  auto pres = standard_algebra(StandardKind::exterior, f, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_algebra(pres, 5).dims());
}
BENCHMARK(BM_BuildExterior)->Arg(4)->Arg(6);

static void BM_BuildTensorRoute(benchmark::State& state) {
  PrimeField f(3);
  auto pres = standard_algebra(StandardKind::exterior, f, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_algebra(pres, 4, {}, Construction::tensor).dims());
}
BENCHMARK(BM_BuildTensorRoute)->Arg(4)->Arg(5);

static void BM_UkDemushkin(benchmark::State& state) {
  PrimeField f(static_cast<unsigned>(state.range(0)));
  auto table = build_algebra(demushkin_algebra(f, 4), 3);
  for (auto _ : state) benchmark::DoNotOptimize(universally_koszul(table).holds);
}
BENCHMARK(BM_UkDemushkin)->Arg(2)->Arg(3);

static void BM_UkP4(benchmark::State& state) {
  PrimeField f(2);
  auto table = build_algebra(stanley_reisner(Graph(4, {{0, 1}, {1, 2}, {2, 3}}), f), 3);
  for (auto _ : state) benchmark::DoNotOptimize(universally_koszul(table).holds);
}
BENCHMARK(BM_UkP4);

static void BM_BettiExterior(benchmark::State& state) {
  PrimeField f(2);
  auto table = build_algebra(standard_algebra(StandardKind::exterior, f, 3), 4);
  for (auto _ : state) benchmark::DoNotOptimize(bigraded_betti(table, 3, 4).entries);
}
BENCHMARK(BM_BettiExterior);

static void BM_Crosscheck4(benchmark::State& state) {
  PrimeField f(2);
  for (auto _ : state) benchmark::DoNotOptimize(uk_diagonal_crosscheck(4, f).disagreements.size());
}
BENCHMARK(BM_Crosscheck4);

BENCHMARK_MAIN();
