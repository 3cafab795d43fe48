#include <benchmark/benchmark.h>

#include "lumenloop/dsl/builtins.hpp"
#include "lumenloop/dsl/format.hpp"
#include "lumenloop/dsl/interpreter.hpp"
#include "lumenloop/dsl/parser.hpp"
#include "lumenloop/dsl/validate.hpp"

using namespace lumenloop;

namespace {

void BM_Evaluate(benchmark::State& state, const char* name) {
  const dsl::RuleProgram program = dsl::builtin_program(name);
  dsl::EvalContext ctx = dsl::make_context(program);
  SensorReading r{0.2, false, 0.7, 0.4, 3, 0};
  for (auto _ : state) {
    r.motion = !r.motion;
    ++r.tick;
    benchmark::DoNotOptimize(dsl::evaluate(program, r, ctx));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_ParseValidate(benchmark::State& state) {
  const std::string_view source = dsl::builtin_source("iteration3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::compile(source));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(source.size()));
}

void BM_Format(benchmark::State& state) {
  const dsl::RuleProgram program = dsl::builtin_program("iteration3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::format_program(program));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Evaluate, iteration1, "iteration1");
BENCHMARK_CAPTURE(BM_Evaluate, iteration3, "iteration3");
BENCHMARK(BM_ParseValidate);
BENCHMARK(BM_Format);
