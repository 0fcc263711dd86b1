#include <benchmark/benchmark.h>

#include "pairlab/constants.hpp"
#include "pairlab/counting.hpp"
#include "pairlab/dseries.hpp"
#include "pairlab/logint.hpp"

using namespace pairlab;

static void BM_SieveBuild(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const Sieve sieve(limit);
    benchmark::DoNotOptimize(sieve.count_primes(limit));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SieveBuild)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_TwinPairs(benchmark::State& state) {
  const Sieve sieve(10'000'002);
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pi_2r(sieve, x, 1));
}
BENCHMARK(BM_TwinPairs)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_PiF(benchmark::State& state) {
  const Sieve sieve(1'000'000);
  const auto f = QuadraticSpec::minus_gap(1);
  for (auto _ : state) benchmark::DoNotOptimize(pi_f(sieve, 1e6, f));
}
BENCHMARK(BM_PiF)->Unit(benchmark::kMillisecond);

static void BM_EiSeries(benchmark::State& state) {
  const Complex w{6.9, 97.6};
  for (auto _ : state) benchmark::DoNotOptimize(ei(w * 0.3));
}
BENCHMARK(BM_EiSeries);

static void BM_EiAsymptotic(benchmark::State& state) {
  const Complex w{6.9, 97.6};
  for (auto _ : state) benchmark::DoNotOptimize(ei(w));
}
BENCHMARK(BM_EiAsymptotic);

static void BM_Li2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(li2(1e6));
}
BENCHMARK(BM_Li2);

static void BM_BatemanHorn(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bateman_horn_constant(QuadraticSpec::minus_gap(1), 1'000'000));
}
BENCHMARK(BM_BatemanHorn)->Unit(benchmark::kMillisecond);

static void BM_D2r(benchmark::State& state) {
  const Sieve sieve(1'000'002);
  for (auto _ : state) benchmark::DoNotOptimize(d_2r(sieve, Complex{0.75, 2.0}, 1, 1'000'000));
}
BENCHMARK(BM_D2r)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
