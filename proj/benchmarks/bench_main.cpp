#include <benchmark/benchmark.h>

#include "krchain/arith.hpp"
#include "krchain/chains.hpp"
#include "krchain/ffield.hpp"
#include "krchain/kummer.hpp"

using namespace krc;

static void BM_PrimesUpTo(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(primes_up_to(n));
}
BENCHMARK(BM_PrimesUpTo)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

static void BM_FindChainPrimes(benchmark::State& state) {
  const CandidateSequence r = vegh_sequence(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(find_chain_primes(r, 2, 1000000));
}
BENCHMARK(BM_FindChainPrimes)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_PermutationChainTester(benchmark::State& state) {
  const CandidateSequence r = vegh_sequence(static_cast<std::size_t>(state.range(0)), 3);
  const PermutationChainTester tester(r, 2);
  std::uint64_t p = 1000003;
  for (auto _ : state) benchmark::DoNotOptimize(tester.test_unchecked(p));
}
BENCHMARK(BM_PermutationChainTester)->Arg(4)->Arg(12)->Arg(20);

static void BM_ClassGroup(benchmark::State& state) {
  const CandidateSequence r = vegh_sequence(static_cast<std::size_t>(state.range(0)), 3);
  const SumSet sums = subset_sums(r);
  for (auto _ : state) benchmark::DoNotOptimize(class_group(sums, 6));
}
BENCHMARK(BM_ClassGroup)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

static void BM_Irreducibles(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(irreducibles_of_degree(3, d));
}
BENCHMARK(BM_Irreducibles)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_FindChainIrreducibles(benchmark::State& state) {
  const PolySequence r = t_powers(5, 3);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_chain_irreducibles(r, 2, 5, d));
}
BENCHMARK(BM_FindChainIrreducibles)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
