#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lumenloop/dsl/diagnostic.hpp"
#include "lumenloop/loop/records.hpp"
#include "lumenloop/metrics.hpp"
#include "lumenloop/scenario.hpp"

namespace lumenloop::loop {

class MissingMetrics : public Error {
 public:
  using Error::Error;
};

// Plain-language description of the task, the scenario and the scoring.
std::string describe_scenario(const ScenarioSpec& scenario, const FitnessWeights& weights = {});

// Problem statement, sensor/actuator contract, language reference, and the
// answer format (a rationale, then one fenced block labelled `controller`).
// Throws std::invalid_argument when either input is empty.
std::string build_initial_prompt(std::string_view scenario_description, std::string_view dsl_reference);

// Opening user message of the first iteration.
std::string build_kickoff_prompt();

// Previous program and its metrics (two decimals) plus the gap to the
// threshold. Throws MissingMetrics if `previous` has none.
std::string build_feedback_prompt(const IterationRecord& previous, double threshold);

// Echoes the offending block and each diagnostic. Never includes metrics.
// Throws std::invalid_argument when `diagnostics` is empty.
std::string build_repair_prompt(std::string_view raw_response, const std::vector<dsl::Diagnostic>& diagnostics);

}  // namespace lumenloop::loop
