// Serial vs OpenMP trial runner, and lazy vs naive greedy.

#include <benchmark/benchmark.h>

#include "maxcov/algorithms.hpp"
#include "maxcov/generators.hpp"
#include "maxcov/parallel.hpp"

using namespace maxcov;

namespace {

std::size_t one_trial(std::size_t n, std::size_t i) {
  const auto g = gen_lrr(n, 3, {7, i});
  return greedy(g, n / 3).value();
}

void BM_TrialsSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto out = run_trials_serial<std::size_t>(64, [n](std::size_t i) { return one_trial(n, i); });
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_TrialsSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TrialsParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto out = run_trials<std::size_t>(64, 0, [n](std::size_t i) { return one_trial(n, i); });
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["threads"] = resolve_threads(0);
}
BENCHMARK(BM_TrialsParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_GreedyLazy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = gen_lrr(n, 3, {11, 0});
  for (auto _ : state) benchmark::DoNotOptimize(greedy(g, n / 3).value());
}
BENCHMARK(BM_GreedyLazy)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_GreedyNaive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = gen_lrr(n, 3, {11, 0});
  for (auto _ : state) benchmark::DoNotOptimize(greedy_naive(g, n / 3).value());
}
BENCHMARK(BM_GreedyNaive)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
