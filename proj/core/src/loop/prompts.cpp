#include "lumenloop/loop/prompts.hpp"

#include <stdexcept>

#include "lumenloop/text.hpp"

namespace lumenloop::loop {
namespace {

constexpr std::string_view kAnswerFormat =
    "Answer with a short rationale explaining your strategy, followed by the complete program in exactly one "
    "fenced code block labelled `controller`, like this:\n"
    "\n"
    "```controller\n"
    "light = 1.0\n"
    "```\n";

}  // namespace

std::string describe_scenario(const ScenarioSpec& scenario, const FitnessWeights& weights) {
  std::string out;
  out += "You are designing the decision logic of a network of smart streetlight poles. Every pole runs the same "
         "program. The lamps must use as little energy as possible while still letting every pedestrian walk "
         "their route to the end, and as quickly as possible.\n\n";
  out += "Scenario '" + scenario.name + "': " + std::to_string(scenario.poles.size()) + " poles, " +
         std::to_string(scenario.people.size()) + " pedestrians, " + std::to_string(scenario.max_ticks) +
         " ticks.\n";
  out += "Pole adjacency (pole: neighbours):\n";
  for (const auto& pole : scenario.poles) {
    out += "  " + std::to_string(pole.id) + ":";
    for (int nb : pole.neighbors) {
      out += " " + std::to_string(nb);
    }
    out += "\n";
  }
  out += "Pedestrians (origin -> destination, first tick):\n";
  for (const auto& p : scenario.people) {
    out += "  " + std::to_string(p.origin) + " -> " + std::to_string(p.destination) + ", tick " +
           std::to_string(p.start_tick) + "\n";
  }
  out += "\nEach tick, a pedestrian standing at a pole advances one pole along the shortest route only if the "
         "ambient light plus that pole's lamp level (after this tick's decision) is at least " +
         to_fixed(scenario.movement_threshold, 2) +
         "; otherwise they wait. Pedestrians at a pole trigger its motion sensor.\n\n";
  out += "Scoring, all values in percent:\n";
  out += "  energy = lamp output used, relative to every lamp at full power for the whole run\n";
  out += "  people = pedestrians who reached their destination\n";
  out += "  trip   = time pedestrians spent travelling, relative to every pedestrian travelling for the whole run\n";
  out += "  fitness = " + to_decimal(weights.w_people) + " * people - " + to_decimal(weights.w_energy) +
         " * energy - " + to_decimal(weights.w_trip) + " * trip\n";
  return out;
}

std::string build_initial_prompt(std::string_view scenario_description, std::string_view dsl_reference) {
  if (scenario_description.empty()) {
    throw std::invalid_argument("scenario description must not be empty");
  }
  if (dsl_reference.empty()) {
    throw std::invalid_argument("language reference must not be empty");
  }
  std::string out;
  out += "TASK\n\n";
  out += scenario_description;
  out += "\nSENSORS AND ACTUATORS\n\n";
  out += "Each pole reads the sensors ambient, motion, signal, light, ticks_since_motion and tick, and sets the "
         "actuators light, listen and broadcast. A pole only hears its neighbours' broadcasts while listen is on, "
         "and hears them one tick after they are sent.\n\n";
  out += dsl_reference;
  out += "\nANSWER FORMAT\n\n";
  out += kAnswerFormat;
  return out;
}

std::string build_kickoff_prompt() {
  return "Write the first controller for this scenario.\n\n" + std::string(kAnswerFormat);
}

std::string build_feedback_prompt(const IterationRecord& previous, double threshold) {
  if (!previous.metrics || !previous.program) {
    throw MissingMetrics("iteration " + std::to_string(previous.index) + " has no metrics to report");
  }
  const SimulationMetrics& m = *previous.metrics;
  std::string out;
  out += "Your controller from iteration " + std::to_string(previous.index) + " was:\n\n";
  out += "```controller\n" + *previous.program + "\n```\n\n";
  out += "Simulation results:\n";
  out += "  energy:  " + to_fixed(m.energy_pct) + " %\n";
  out += "  people:  " + to_fixed(m.people_pct) + " %\n";
  out += "  trip:    " + to_fixed(m.trip_pct) + " %\n";
  out += "  fitness: " + to_fixed(m.fitness) + "\n\n";
  if (m.fitness >= threshold) {
    out += "The fitness meets the target of " + to_fixed(threshold) + ".\n\n";
  } else {
    out += "The fitness is " + to_fixed(threshold - m.fitness) + " below the target of " + to_fixed(threshold) +
           ".\n\n";
  }
  out += "Propose an improved controller. ";
  out += kAnswerFormat;
  return out;
}

std::string build_repair_prompt(std::string_view offending, const std::vector<dsl::Diagnostic>& diagnostics) {
  if (diagnostics.empty()) {
    throw std::invalid_argument("repair prompt needs at least one diagnostic");
  }
  std::string out;
  out += "Your last answer could not be used as a controller.\n\n";
  out += "Offending block:\n\n```\n" + std::string(offending);
  if (!offending.empty() && offending.back() != '\n') {
    out += "\n";
  }
  out += "```\n\nProblems:\n";
  for (const auto& d : diagnostics) {
    out += "  - " + dsl::to_string(d) + "\n";
  }
  out += "\nFix these problems and send the whole corrected program. ";
  out += kAnswerFormat;
  return out;
}

}  // namespace lumenloop::loop
