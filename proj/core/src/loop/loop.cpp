#include "lumenloop/loop/loop.hpp"

#include <cmath>
#include <memory>

#include "lumenloop/dsl/builtins.hpp"
#include "lumenloop/dsl/format.hpp"
#include "lumenloop/dsl/interpreter.hpp"
#include "lumenloop/loop/extract.hpp"
#include "lumenloop/loop/prompts.hpp"
#include "lumenloop/simulation.hpp"

namespace lumenloop::loop {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "user";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::accepted: return "accepted";
    case Outcome::below_threshold: return "below-threshold";
    case Outcome::parse_failed: return "parse-failed";
  }
  return "parse-failed";
}

std::string_view to_string(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::threshold_met: return "threshold-met";
    case TerminalStatus::iteration_budget_exhausted: return "iteration-budget-exhausted";
    case TerminalStatus::provider_failure: return "provider-failure";
  }
  return "provider-failure";
}

void LoopConfig::validate() const {
  if (!std::isfinite(fitness_threshold)) throw ConfigError("fitness_threshold must be finite");
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (max_repair_attempts < 0) throw ConfigError("max_repair_attempts must be non-negative");
  if (provider != "http" && provider != "replay") {
    throw ConfigError("provider must be 'http' or 'replay', got '" + provider + "'");
  }
  if (model.empty()) throw ConfigError("model must not be empty");
  if (!(temperature >= 0.0 && temperature <= 2.0)) throw ConfigError("temperature must lie in [0, 2]");
  if (timeout_seconds < 1) throw ConfigError("timeout_seconds must be positive");
  if (history != "latest-feedback-only") {
    throw ConfigError("history mode must be 'latest-feedback-only', got '" + history + "'");
  }
}

ProgramEvaluator simulation_evaluator(ScenarioSpec scenario, FitnessWeights weights) {
  return [scenario = std::move(scenario), weights](const dsl::RuleProgram& program) {
    auto shared = std::make_shared<const dsl::RuleProgram>(program);
    return run_simulation(scenario, dsl::rule_controller_factory(shared), false, weights).metrics;
  };
}

ProgramEvaluator calibration_stub(ProgramEvaluator fallback) {
  struct Binding {
    std::string canonical;
    SimulationMetrics metrics;
  };
  auto bindings = std::make_shared<std::vector<Binding>>();
  bindings->push_back({dsl::format_program(dsl::builtin_program("iteration1")), {4.03, 66.66, 59.25, 29.49}});
  bindings->push_back({dsl::format_program(dsl::builtin_program("iteration2")), {15.02, 100.0, 54.62, 61.2}});
  bindings->push_back({dsl::format_program(dsl::builtin_program("iteration3")), {11.92, 100.0, 54.62, 62.44}});
  return [bindings, fallback = std::move(fallback)](const dsl::RuleProgram& program) {
    const std::string canonical = dsl::format_program(program);
    for (const auto& b : *bindings) {
      if (b.canonical == canonical) {
        return b.metrics;
      }
    }
    if (!fallback) {
      throw ConfigError("calibration stub has no binding for this program and no fallback");
    }
    return fallback(program);
  };
}

namespace {

std::vector<dsl::Diagnostic> failure_diagnostics(std::string_view response) {
  try {
    extract_program(response);
  } catch (const NoCodeBlock& e) {
    return {{dsl::Severity::error, {1, 1}, std::string(e.what()) + "; put the program in a ```controller block"}};
  } catch (const dsl::LexError& e) {
    return {e.diagnostic()};
  } catch (const dsl::ParseError& e) {
    return {e.diagnostic()};
  } catch (const dsl::ProgramError& e) {
    std::vector<dsl::Diagnostic> errors;
    for (const auto& d : e.diagnostics()) {
      if (d.severity == dsl::Severity::error) {
        errors.push_back(d);
      }
    }
    return errors;
  }
  return {};
}

std::string rationale_without_block(std::string_view response) {
  const auto blocks = find_fenced_blocks(response);
  std::string text(response);
  if (!blocks.empty()) {
    text.erase(blocks.back().begin, blocks.back().end - blocks.back().begin);
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

}  // namespace

Transcript run_loop(const LoopConfig& config, Provider& provider, const std::string& system_prompt,
                    const ProgramEvaluator& evaluate, TranscriptWriter* sink) {
  config.validate();
  Transcript t;
  t.config = config;
  t.system_prompt = system_prompt;
  if (sink) {
    sink->header(config, system_prompt);
  }

  auto finish = [&](TerminalStatus status, std::string failure = {}) {
    t.status = status;
    t.failure = std::move(failure);
    if (sink) {
      sink->status(t.status, t.failure);
    }
    return t;
  };

  std::optional<std::size_t> latest_scored;  // index into t.records
  for (int i = 1; i <= config.max_iterations; ++i) {
    IterationRecord rec;
    rec.index = i;
    rec.prompt = latest_scored ? build_feedback_prompt(t.records[*latest_scored], config.fitness_threshold)
                               : build_kickoff_prompt();

    ProviderRequest request{config.model,
                            {{Role::system, system_prompt}, {Role::user, rec.prompt}},
                            config.temperature};
    std::optional<ExtractedProgram> extracted;
    try {
      rec.raw_response = provider.complete(request).content;
      while (true) {
        const auto diagnostics = failure_diagnostics(rec.raw_response);
        if (diagnostics.empty()) {
          extracted = extract_program(rec.raw_response);
          break;
        }
        for (const auto& d : diagnostics) {
          rec.diagnostics.push_back(dsl::to_string(d));
        }
        if (rec.repair_attempts >= config.max_repair_attempts) {
          break;
        }
        ++rec.repair_attempts;
        request.messages = {{Role::system, system_prompt},
                            {Role::user, rec.prompt},
                            {Role::assistant, rec.raw_response},
                            {Role::user, build_repair_prompt(offending_code(rec.raw_response), diagnostics)}};
        rec.raw_response = provider.complete(request).content;
      }
    } catch (const ProviderError& e) {
      return finish(TerminalStatus::provider_failure, e.what());
    }

    if (!extracted) {
      rec.outcome = Outcome::parse_failed;
      rec.rationale = rationale_without_block(rec.raw_response);
    } else {
      rec.rationale = extracted->rationale;
      rec.program = dsl::format_program(extracted->program);
      rec.metrics = evaluate(extracted->program);
      rec.outcome = rec.metrics->fitness >= config.fitness_threshold ? Outcome::accepted : Outcome::below_threshold;
    }
    t.records.push_back(std::move(rec));
    if (sink) {
      sink->record(t.records.back());
    }
    if (t.records.back().outcome == Outcome::accepted) {
      return finish(TerminalStatus::threshold_met);
    }
    if (t.records.back().metrics) {
      latest_scored = t.records.size() - 1;
    }
  }
  return finish(TerminalStatus::iteration_budget_exhausted);
}

Transcript run_loop(const LoopConfig& config, Provider& provider, const ScenarioSpec& scenario,
                    const FitnessWeights& weights, TranscriptWriter* sink) {
  const std::string system_prompt =
      build_initial_prompt(describe_scenario(scenario, weights), dsl::language_reference());
  return run_loop(config, provider, system_prompt, simulation_evaluator(scenario, weights), sink);
}

}  // namespace lumenloop::loop
