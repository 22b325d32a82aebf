// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "semiprod/core.hpp"
#include "semiprod/distmsb.hpp"
#include "semiprod/dominance.hpp"
#include "semiprod/maxmin.hpp"

using namespace semiprod;

namespace {

BoolMatrix random_bool(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution on(density);
  BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (on(rng)) m.set(i, j);
  return m;
}

ExtMatrix random_ext(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> v(-1000, 1000);
  ExtMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v(rng);
  return m;
}

template <auto Kernel>
void bool_case(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_bool(n, 0.05, 1);
  const auto b = random_bool(n, 0.05, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void ext_case(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_ext(n, 3);
  const auto b = random_ext(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
  state.SetComplexityN(state.range(0));
}

BoolMatrix dominance_parallel(const ExtMatrix& a, const ExtMatrix& b) { return dominance_brute(a, b, false); }
BoolMatrix dominance_serial(const ExtMatrix& a, const ExtMatrix& b) { return serial::dominance_brute(a, b, false); }
ExtMatrix maxmin_parallel(const ExtMatrix& a, const ExtMatrix& b) { return maxmin_brute(a, b); }
ExtMatrix maxmin_serial(const ExtMatrix& a, const ExtMatrix& b) { return serial::maxmin_brute(a, b); }
ExtMatrix distance_parallel(const ExtMatrix& a, const ExtMatrix& b) { return distance_brute(a, b); }
ExtMatrix distance_serial(const ExtMatrix& a, const ExtMatrix& b) { return serial::distance_brute(a, b); }
BoolMatrix boolmul_parallel(const BoolMatrix& a, const BoolMatrix& b) { return bool_multiply(a, b); }
BoolMatrix boolmul_serial(const BoolMatrix& a, const BoolMatrix& b) { return serial::bool_multiply(a, b); }

void dominance_fast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_ext(n, 5);
  const auto b = random_ext(n, 6);
  for (auto _ : state) {
    CostLedger ledger(1);
    benchmark::DoNotOptimize(dominance_product(a, b, false, Engine::QuantumSim, ledger));
  }
}

}  // namespace

BENCHMARK(bool_case<boolmul_parallel>)->Name("bool_multiply/parallel")->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK(bool_case<boolmul_serial>)->Name("bool_multiply/serial")->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK(ext_case<dominance_parallel>)->Name("dominance_brute/parallel")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(ext_case<dominance_serial>)->Name("dominance_brute/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(ext_case<maxmin_parallel>)->Name("maxmin_brute/parallel")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(ext_case<maxmin_serial>)->Name("maxmin_brute/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(ext_case<distance_parallel>)->Name("distance_brute/parallel")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(ext_case<distance_serial>)->Name("distance_brute/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(dominance_fast)->Name("dominance_product/quantum-sim")->RangeMultiplier(2)->Range(64, 256);

BENCHMARK_MAIN();
