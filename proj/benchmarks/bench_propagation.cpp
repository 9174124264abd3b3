#include <benchmark/benchmark.h>

#include <scrap/propagation.hpp>
#include <scrap/scenarios.hpp>

using namespace scrap;

static void BM_atomic_response(benchmark::State& state) {
  const PropagationSetup s = propagation_setup_of(preset("fig17a"));
  for (auto _ : state) {
    Trajectory tr = atomic_response(s.entry, s.stark, s.medium, s.delta, 1e-8);
    benchmark::DoNotOptimize(tr.final_state());
  }
}
BENCHMARK(BM_atomic_response)->Unit(benchmark::kMillisecond);

// Fixed depth interval, so the result tracks step count times slice cost.
static void BM_propagate(benchmark::State& state, const char* name) {
  const PropagationSetup s = propagation_setup_of(preset(name));
  const double Z = static_cast<double>(state.range(0));
  for (auto _ : state) {
    PropagationRecord rec = propagate(s, Z);
    benchmark::DoNotOptimize(rec.xi_samples.size());
  }
}
BENCHMARK_CAPTURE(BM_propagate, fig17a, "fig17a")->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_propagate, fig17b, "fig17b")->Arg(10000)->Unit(benchmark::kMillisecond);
