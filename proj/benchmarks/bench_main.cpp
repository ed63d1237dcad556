#include <benchmark/benchmark.h>

#include "localdel/algorithms.hpp"
#include "localdel/ode.hpp"

using namespace localdel;

static void BM_SampleSimpleRegular(benchmark::State& state) {
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_simple_regular(static_cast<int>(state.range(0)), 3, rng));
}
BENCHMARK(BM_SampleSimpleRegular)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Girth(benchmark::State& state) {
  Rng rng(2);
  const ColouredGraph g = sample_simple_regular(static_cast<int>(state.range(0)), 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(girth(g));
}
BENCHMARK(BM_Girth)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

// Full prioritised run on the lazy pairing, then repair and validation.
static void BM_Trial(benchmark::State& state, const char* name) {
  const AlgorithmSpec spec = make_algorithm(name);
  std::uint64_t k = 0;
  for (auto _ : state) {
    Rng rng(3, k++);
    benchmark::DoNotOptimize(run_trial(spec, State::from_pairing(static_cast<int>(state.range(0)), 3, spec.types), rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Trial, min_degree_is, "min_degree_is")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Trial, cubic_maxcut, "cubic_maxcut")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Trial, cubic_is_path, "cubic_is_path")->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ChunkyRun(benchmark::State& state) {
  AlgorithmParams ap;
  ap.mode = "chunky";
  ap.epsilon = 0.01;
  const AlgorithmSpec spec = make_algorithm("cubic_maxcut", ap);
  std::uint64_t k = 0;
  for (auto _ : state) {
    Rng rng(4, k++);
    benchmark::DoNotOptimize(run_algorithm(spec, State::from_pairing(100000, 3, spec.types), StopRule{100, {}}, rng,
                                           RunOptions{1, true, true}));
  }
}
BENCHMARK(BM_ChunkyRun)->Unit(benchmark::kMillisecond);

static void BM_GenericField(benchmark::State& state) {
  const AlgorithmSpec spec = make_algorithm("cubic_is_path");
  const double p = static_cast<double>(state.range(0)) / 10;
  std::vector<double> y(spec.types.count(), 0.0);
  y[spec.types.id(0, 2)] = p / 2;
  y[spec.types.id(0, 3)] = (1 - p) / 3;
  for (auto _ : state) benchmark::DoNotOptimize(eval_transition_generic(spec, spec.types.id(0, 2), y));
}
BENCHMARK(BM_GenericField)->DenseRange(1, 5, 2)->Unit(benchmark::kMicrosecond);

static void BM_CutConstants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cut_constants());
}
BENCHMARK(BM_CutConstants)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
