// Serial reference against the OpenMP path for the trial runner and the
// mutation-class search.

#include <benchmark/benchmark.h>

#include "clusterdouble/seed.hpp"
#include "clusterdouble/surface.hpp"
#include "clusterdouble/verify.hpp"

using namespace clusterdouble;

namespace {

Execution execution_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_MapInvolutivity(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_map_property("involutivity", 5, 500, 1, execution_of(state)));
  }
  label(state);
}
BENCHMARK(BM_MapInvolutivity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MapNaturality(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_map_property("naturality", 4, 100, 1, execution_of(state)));
  }
  label(state);
}
BENCHMARK(BM_MapNaturality)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PolygonRoundTrip(benchmark::State& state) {
  const IdealTriangulation t = all_polygon_triangulations(8).front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_polygon_property("roundtrip", t, 200, 1, execution_of(state)));
  }
  label(state);
}
BENCHMARK(BM_PolygonRoundTrip)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MutationClass(benchmark::State& state) {
  const Seed s = type_a_seed(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_mutation_class(s, 2000, execution_of(state)));
  }
  label(state);
}
BENCHMARK(BM_MutationClass)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
