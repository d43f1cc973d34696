#include "shrinker/geometry.hpp"
#include "shrinker/hermite.hpp"
#include "shrinker/radial_jacobi.hpp"
#include "shrinker/spectrum.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace shrinker;

void BM_HermiteEval(benchmark::State& state) {
  auto p = hermite_half(static_cast<int>(state.range(0)));
  double x = 1.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermite_eval(p, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_HermiteEval)->Arg(4)->Arg(16)->Arg(48);

void BM_EnumerateSpectrum(benchmark::State& state) {
  ShrinkerSpec spec{static_cast<int>(state.range(0)), 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_spectrum(spec, Rational(3)));
}
BENCHMARK(BM_EnumerateSpectrum)->Arg(3)->Arg(6)->Arg(9);

void BM_G2Eval(benchmark::State& state) {
  auto g2 = build_g2();
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g2(x));
    x = x < 6.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_G2Eval);

void BM_FindR1(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(find_r1(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FindR1)->Arg(2)->Arg(7);

void BM_DirichletGround(benchmark::State& state) {
  ShrinkerSpec spec{2, 1};
  double r = 1.4142135623730951;
  for (auto _ : state)
    benchmark::DoNotOptimize(dirichlet_ground_eigenvalue(
        spec, -r, r, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DirichletGround)->Arg(256)->Arg(2048);

void BM_FFunctional(benchmark::State& state) {
  auto sphere = ParametricHypersurface::sphere(2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(f_functional(sphere, {0, 0, 0}, 1.0));
}
BENCHMARK(BM_FFunctional);

}  // namespace

BENCHMARK_MAIN();
