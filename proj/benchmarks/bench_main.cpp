#include "weyl/decomp.hpp"
#include "weyl/dims.hpp"

#include <benchmark/benchmark.h>

using namespace weyl;

static void BM_decompose_exact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Model m(n, 0, n, ScalarMode::Exact);
  const auto a = random_curv<Rational>(SpaceTag::Weyl, m, 1);
  for (auto _ : state) {
    Curv4<Rational> sum(m);
    for (int i = 1; i <= 8; ++i) sum += alpha(a, i);
    benchmark::DoNotOptimize(sum.data().data());
  }
}
BENCHMARK(BM_decompose_exact)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

static void BM_decompose_float(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Model m(n, 0, n, ScalarMode::Float64);
  const auto a = random_curv<double>(SpaceTag::Weyl, m, 1);
  for (auto _ : state) {
    Curv4<double> sum(m);
    for (int i = 1; i <= 8; ++i) sum += alpha(a, i);
    benchmark::DoNotOptimize(sum.data().data());
  }
}
BENCHMARK(BM_decompose_float)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

static void BM_dims_elimination(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Model m(n, 0, n, ScalarMode::Exact);
  for (auto _ : state) {
    benchmark::DoNotOptimize(module_dimension(SpaceTag::Algebraic, m));
  }
}
BENCHMARK(BM_dims_elimination)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_membership_weyl(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Model m(n, 0, n, ScalarMode::Float64);
  const auto a = random_curv<double>(SpaceTag::Weyl, m, 2);
  for (auto _ : state) {
    auto rep = membership(a, SpaceTag::Weyl);
    benchmark::DoNotOptimize(rep.holds);
  }
}
BENCHMARK(BM_membership_weyl)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
