#include <benchmark/benchmark.h>

#include "lumenloop/dsl/builtins.hpp"
#include "lumenloop/dsl/interpreter.hpp"
#include "lumenloop/scenario.hpp"
#include "lumenloop/simulation.hpp"

using namespace lumenloop;

namespace {

void BM_SimulateBuiltin(benchmark::State& state, const char* scenario_name, const char* controller) {
  const ScenarioSpec scenario = builtin_scenario(scenario_name);
  const auto factory =
      dsl::rule_controller_factory(std::make_shared<const dsl::RuleProgram>(dsl::builtin_program(controller)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(scenario, factory).metrics.fitness);
  }
  state.SetItemsProcessed(state.iterations() * scenario.max_ticks * static_cast<int64_t>(scenario.poles.size()));
}

void BM_SimulateConstant(benchmark::State& state) {
  const ScenarioSpec scenario = builtin_scenario("scenario2");
  const auto factory = constant_controller({1.0, true, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(scenario, factory).metrics.fitness);
  }
  state.SetItemsProcessed(state.iterations() * scenario.max_ticks * static_cast<int64_t>(scenario.poles.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_SimulateBuiltin, scenario1_iteration3, "scenario1", "iteration3");
BENCHMARK_CAPTURE(BM_SimulateBuiltin, scenario2_iteration3, "scenario2", "iteration3");
BENCHMARK_CAPTURE(BM_SimulateBuiltin, scenario2_iteration1, "scenario2", "iteration1");
BENCHMARK(BM_SimulateConstant);
