#include <benchmark/benchmark.h>

#include "sdisc/rng.hpp"
#include "sdisc/supermatrix.hpp"

using namespace sdisc;

namespace {

Grassmann random_element(Rng& rng, int n) {
  Grassmann g(n);
  for (uint32_t m = 0; m < g.mask_count(); ++m) g.set_coeff(m, rng.box(1.0));
  return g;
}

SuperMatrix random_matrix(Rng& rng, const Space& s, int n) {
  SuperMatrix m(s, s, n, MatType::Even);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) m.at(i, j) = random_element(rng, n);
  return m;
}

void bm_gmul_serial(benchmark::State& state) {
  const int n = int(state.range(0));
  Rng rng(1);
  auto x = random_element(rng, n), y = random_element(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gmul_serial(x, y));
}

void bm_gmul_parallel(benchmark::State& state) {
  const int n = int(state.range(0));
  Rng rng(1);
  auto x = random_element(rng, n), y = random_element(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gmul_parallel(x, y));
}

void bm_smul_serial(benchmark::State& state) {
  const int d = int(state.range(0));
  const int n = int(state.range(1));
  Rng rng(2);
  const Space s{d, d, d / 2};
  auto a = random_matrix(rng, s, n), b = random_matrix(rng, s, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::smul_serial(a, b));
}

void bm_smul_parallel(benchmark::State& state) {
  const int d = int(state.range(0));
  const int n = int(state.range(1));
  Rng rng(2);
  const Space s{d, d, d / 2};
  auto a = random_matrix(rng, s, n), b = random_matrix(rng, s, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::smul_parallel(a, b));
}

void bm_exp(benchmark::State& state) {
  const int d = int(state.range(0));
  Rng rng(3);
  const Space s{d, d, d / 2};
  auto a = random_matrix(rng, s, 2) * Complex(0.2);
  for (auto _ : state) benchmark::DoNotOptimize(exp(a));
}

}  // namespace

BENCHMARK(bm_gmul_serial)->Arg(2)->Arg(4)->Arg(6)->Arg(7)->UseRealTime();
BENCHMARK(bm_gmul_parallel)->Arg(2)->Arg(4)->Arg(6)->Arg(7)->UseRealTime();
BENCHMARK(bm_smul_serial)
    ->Args({3, 2})
    ->Args({8, 2})
    ->Args({16, 2})
    ->Args({6, 3})
    ->UseRealTime();
BENCHMARK(bm_smul_parallel)
    ->Args({3, 2})
    ->Args({8, 2})
    ->Args({16, 2})
    ->Args({6, 3})
    ->UseRealTime();
BENCHMARK(bm_exp)->Arg(4)->Arg(8)->UseRealTime();

BENCHMARK_MAIN();
