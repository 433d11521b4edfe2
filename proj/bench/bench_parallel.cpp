// Serial reference vs OpenMP: one correlation integral (cells evaluated in
// parallel) and a small sweep (points evaluated in parallel).
//   ./bench_parallel --benchmark_counters_tabular=true
#include "cosmoharvest/harvest.hpp"
#include "cosmoharvest/sweep.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace cosmoharvest;

namespace {

  quadrature::Execution execution(benchmark::State const &state) {
    return state.range(0) ? quadrature::Execution::parallel : quadrature::Execution::serial;
  }

  void label(benchmark::State &state) {
    state.SetLabel(state.range(0) ? "openmp" : "serial");
    state.counters["threads"] = state.range(0) ? omp_get_max_threads() : 1;
  }

  void BM_correlation_M(benchmark::State &state) {
    DetectorPair pair;
    for (DetectorParams *x : {&pair.a, &pair.b}) {
      x->gap   = 6.0;
      x->sigma = 0.1;
    }
    pair.b.position = {2.0, 0.0, 0.0};
    pair.b.center   = -1.0;
    auto const model = CosmologyModel::de_sitter(0.2);
    QuadratureConfig cfg;
    cfg.execution = execution(state);
    for (auto _ : state) benchmark::DoNotOptimize(correlation_M(pair, model, cfg));
    label(state);
  }
  BENCHMARK(BM_correlation_M)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

  void BM_sweep_grid(benchmark::State &state) {
    sweep::SweepSpec spec;
    spec.mode = sweep::Mode::grid;
    spec.axes = {{sweep::Axis::d_over_T, 1.0, 3.0, 3}, {sweep::Axis::delta_t_over_T, -2.0, 2.0, 3}};
    for (auto _ : state) benchmark::DoNotOptimize(sweep::evaluate_all(spec, execution(state)));
    label(state);
  }
  BENCHMARK(BM_sweep_grid)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

} // namespace

// libbenchmark_main.a ships as LTO bytecode on some distributions; use the shared library's entry points
BENCHMARK_MAIN();
