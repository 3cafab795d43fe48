#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include "lumenloop/dsl/ast.hpp"
#include "lumenloop/loop/provider.hpp"
#include "lumenloop/loop/records.hpp"
#include "lumenloop/loop/transcript.hpp"
#include "lumenloop/metrics.hpp"
#include "lumenloop/scenario.hpp"

namespace lumenloop::loop {

using ProgramEvaluator = std::function<SimulationMetrics(const dsl::RuleProgram&)>;

// Runs the program on every pole of `scenario`.
ProgramEvaluator simulation_evaluator(ScenarioSpec scenario, FitnessWeights weights = {});

// Test fixture evaluator: the three built-in iteration programs map to fixed
// published metric rows (fitness 29.49, 61.20, 62.44); any other program goes
// to `fallback`. Lets loop control be tested apart from scenario calibration.
ProgramEvaluator calibration_stub(ProgramEvaluator fallback);

// Iterates prompt -> response -> program -> metrics until fitness reaches
// the threshold, the iteration budget runs out, or the provider fails.
// Unparseable responses get up to max_repair_attempts repair round trips.
// When `sink` is given, every record is persisted as soon as it exists.
Transcript run_loop(const LoopConfig& config, Provider& provider, const std::string& system_prompt,
                    const ProgramEvaluator& evaluate, TranscriptWriter* sink = nullptr);

// Builds the system prompt from the scenario and evaluates by simulation.
Transcript run_loop(const LoopConfig& config, Provider& provider, const ScenarioSpec& scenario,
                    const FitnessWeights& weights = {}, TranscriptWriter* sink = nullptr);

}  // namespace lumenloop::loop
