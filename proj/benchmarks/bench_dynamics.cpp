#include <benchmark/benchmark.h>

#include <scrap/multilevel.hpp>
#include <scrap/scenarios.hpp>
#include <scrap/twolevel.hpp>

using namespace scrap;

static void BM_evolve_preset(benchmark::State& state, const char* name) {
  const Preset p = preset(name);
  const DriveConfig d = drive_of(p);
  const TimeGrid g{-6.0, 12.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    Trajectory tr = evolve(d, g, 1e-8);
    benchmark::DoNotOptimize(tr.final_state());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_evolve_preset, fig4_solid, "fig4_solid")->Arg(201)->Arg(2001);
BENCHMARK_CAPTURE(BM_evolve_preset, fig6_a_solid, "fig6_a_solid")->Arg(201)->Arg(2001);

static void BM_oracle(benchmark::State& state) {
  const OracleConfig cfg = pi_half_oracle(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    ComparisonReport r = compare_reduced_vs_full(cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_oracle)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
