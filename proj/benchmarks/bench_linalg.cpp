#include "latsurj/ensembles.hpp"
#include "latsurj/exact_linalg.hpp"
#include "latsurj/modp_linalg.hpp"

#include <benchmark/benchmark.h>

using namespace latsurj;

namespace {

IntMatrix sample(std::size_t n, std::uint64_t seed, const char* dist = "uniform-1,0,1") {
  EnsembleSpec spec;
  spec.n = n;
  spec.m = n;
  spec.dist = Distribution::parse(dist);
  spec.seed = seed;
  return sample_matrix(spec);
}

void BM_DetCrt(benchmark::State& state) {
  const auto m = sample(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(det_mod_crt(m));
}
BENCHMARK(BM_DetCrt)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_DetBareiss(benchmark::State& state) {
  const auto m = sample(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(det_bareiss(m));
}
BENCHMARK(BM_DetBareiss)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_RankMod2(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  EnsembleSpec spec;
  spec.n = n;
  spec.m = n;
  spec.dist = Distribution::parse("bernoulli(1/10)");
  spec.seed = 3;
  const auto values = sample_matrix_values(spec);
  for (auto _ : state) benchmark::DoNotOptimize(rank_mod_p(reduce_mod(n, n, values, 2)));
}
BENCHMARK(BM_RankMod2)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_RankModLargePrime(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  EnsembleSpec spec;
  spec.n = n;
  spec.m = n;
  spec.dist = Distribution::parse("uniform01");
  spec.seed = 3;
  const auto values = sample_matrix_values(spec);
  for (auto _ : state) benchmark::DoNotOptimize(rank_mod_p(reduce_mod(n, n, values, 2305843009213693951ULL)));
}
BENCHMARK(BM_RankModLargePrime)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_SmithDiagonal(benchmark::State& state) {
  const auto m = sample(static_cast<std::size_t>(state.range(0)), 5, "uniform01");
  for (auto _ : state) benchmark::DoNotOptimize(smith_diagonal(m));
}
BENCHMARK(BM_SmithDiagonal)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace
