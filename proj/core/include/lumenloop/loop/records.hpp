#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lumenloop/metrics.hpp"

namespace lumenloop::loop {

struct LoopConfig {
  double fitness_threshold = 62.0;  // accepted when fitness >= threshold
  int max_iterations = 10;
  int max_repair_attempts = 2;
  std::string provider = "http";  // "http" or "replay"
  std::string model = "gpt-4";
  double temperature = 0.2;
  int timeout_seconds = 60;
  std::string scenario = "scenario1";
  // Each request carries the problem statement plus the latest program and
  // metrics only; earlier iterations are not replayed to the model.
  std::string history = "latest-feedback-only";

  // Throws ConfigError.
  void validate() const;
};

enum class Outcome { accepted, below_threshold, parse_failed };
enum class TerminalStatus { threshold_met, iteration_budget_exhausted, provider_failure };

std::string_view to_string(Outcome o);
std::string_view to_string(TerminalStatus s);

struct IterationRecord {
  int index = 1;                          // 1-based
  std::string prompt;                     // user message that opened the iteration
  std::string raw_response;               // last response received in this iteration
  std::string rationale;                  // raw_response without the code block
  std::optional<std::string> program;     // canonical program text
  std::optional<SimulationMetrics> metrics;
  int repair_attempts = 0;
  Outcome outcome = Outcome::below_threshold;
  std::vector<std::string> diagnostics;   // why parsing failed, when it did
};

struct Transcript {
  LoopConfig config;
  std::string system_prompt;
  std::vector<IterationRecord> records;
  TerminalStatus status = TerminalStatus::iteration_budget_exhausted;
  std::string failure;  // provider error message for provider_failure
};

}  // namespace lumenloop::loop
