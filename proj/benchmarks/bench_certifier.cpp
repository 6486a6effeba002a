#include "latsurj/certifier.hpp"
#include "latsurj/ensembles.hpp"

#include <benchmark/benchmark.h>

using namespace latsurj;

namespace {

void BM_IsSurjective(benchmark::State& state) {
  EnsembleSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.m = spec.n + static_cast<std::size_t>(state.range(1));
  spec.dist = Distribution::parse("uniform01");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    spec.seed = ++seed;
    const auto m = sample_matrix(spec);
    state.ResumeTiming();
    benchmark::DoNotOptimize(is_surjective(m));
  }
}
BENCHMARK(BM_IsSurjective)->Args({50, 0})->Args({50, 2})->Args({100, 2})->Unit(benchmark::kMillisecond);

void BM_Factorize(benchmark::State& state) {
  Integer p, q;
  mpz_nextprime(p.get_mpz_t(), Integer("1000000000000").get_mpz_t());
  mpz_nextprime(q.get_mpz_t(), Integer("5000000000000").get_mpz_t());
  const Integer n = p * q * 720;
  for (auto _ : state) benchmark::DoNotOptimize(factorize(n));
}
BENCHMARK(BM_Factorize)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
