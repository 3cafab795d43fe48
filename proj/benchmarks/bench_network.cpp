#include <benchmark/benchmark.h>

#include "lumenloop/neuro/genetic.hpp"
#include "lumenloop/neuro/network.hpp"
#include "lumenloop/scenario.hpp"

using namespace lumenloop;
using namespace lumenloop::neuro;

namespace {

void BM_Forward(benchmark::State& state) {
  const NetworkSpec spec{4, static_cast<int>(state.range(0)), 3};
  EvolutionConfig cfg;
  cfg.population_size = 2;
  const Genome genome = init_population(cfg, spec)[0];
  SensorReading r{0.3, true, 0.5, 0.8, 0, 0};
  for (auto _ : state) {
    r.ambient = r.ambient > 0.9 ? 0.0 : r.ambient + 0.01;
    benchmark::DoNotOptimize(forward(spec, genome, r));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_EvaluatePopulation(benchmark::State& state) {
  const ScenarioSpec scenario = builtin_scenario("scenario1");
  const NetworkSpec spec;
  EvolutionConfig cfg;
  const auto initial = init_population(cfg, spec);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto pop = initial;
    evaluate_population(pop, scenario, spec, {}, threads);
    benchmark::DoNotOptimize(pop.front().fitness);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(initial.size()));
}

}  // namespace

BENCHMARK(BM_Forward)->Arg(6)->Arg(16);
BENCHMARK(BM_EvaluatePopulation)->Arg(1)->Arg(4)->UseRealTime();
