#include <benchmark/benchmark.h>

#include "regulus/matrix.hpp"
#include "regulus/scan.hpp"
#include "regulus/svd.hpp"
#include "regulus/word.hpp"

namespace {

using namespace regulus;

GeneratorMap shear_pair() {
  return {{"x", RationalMatrix::unitriangular(1, 0, 1)},
          {"y", RationalMatrix::unitriangular(1, 1, 1)}};
}

void BM_SingularValues(benchmark::State& state) {
  RationalMatrix g = RationalMatrix::unitriangular(rat(355, 113), rat(-7, 3), 41);
  g = g * g * g;
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(g));
}
BENCHMARK(BM_SingularValues);

void BM_WordEval(benchmark::State& state) {
  GeneratorMap gens = shear_pair();
  GroupWord w = GroupWord::parse("x^9 y^-7 x^3 y^11 x^-5");
  for (auto _ : state) benchmark::DoNotOptimize(word_eval(gens, w));
}
BENCHMARK(BM_WordEval);

void BM_SphereEnumeration(benchmark::State& state) {
  BallSpec spec;
  spec.generators = shear_pair();
  spec.radius = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_sphere(spec, spec.radius));
}
BENCHMARK(BM_SphereEnumeration)->Arg(4)->Arg(8);

void BM_SigmaGap(benchmark::State& state) {
  RationalMatrix g = RationalMatrix::unitriangular(0, 1000000, 3000000);
  for (auto _ : state) benchmark::DoNotOptimize(sigma_gap(g));
}
BENCHMARK(BM_SigmaGap);

}  // namespace

BENCHMARK_MAIN();
