#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "lumenloop/metrics.hpp"
#include "lumenloop/scenario.hpp"

namespace lumenloop {

struct SensorReading {
  double ambient = 0.0;
  bool motion = false;
  double signal = 0.0;         // 0 unless the pole was listening this tick
  double current_light = 0.0;  // lamp level in effect before this tick's decision
  std::uint8_t ticks_since_motion = 255;  // saturates; 255 also means "never"
  int tick = 0;

  bool operator==(const SensorReading&) const = default;
};

struct ActuatorCommand {
  double light = 0.0;
  bool listen = true;
  double broadcast = 0.0;

  bool operator==(const ActuatorCommand&) const = default;
};

// Actuator state of every pole before its first decision.
inline constexpr ActuatorCommand kInitialCommand{0.0, true, 0.0};

ActuatorCommand clamp_command(ActuatorCommand c);

// Per-pole decision engine. One instance per pole; instances keep private
// state between ticks and are never shared across poles.
class Controller {
 public:
  virtual ~Controller() = default;

  // `previous` is the command currently in effect; values not changed by the
  // controller are expected to be carried over from it.
  virtual ActuatorCommand decide(const SensorReading& reading, const ActuatorCommand& previous) = 0;
};

using ControllerFactory = std::function<std::unique_ptr<Controller>(int pole_id)>;

struct PoleTrace {
  int pole_id = 0;
  SensorReading reading;
  ActuatorCommand command;

  bool operator==(const PoleTrace&) const = default;
};

struct PersonTrace {
  int person_id = 0;
  int pole_id = 0;  // position after this tick's movement phase
  bool active = false;
  bool moved = false;
  bool finished = false;

  bool operator==(const PersonTrace&) const = default;
};

struct TickTrace {
  int tick = 0;
  std::vector<PoleTrace> poles;
  std::vector<PersonTrace> people;

  bool operator==(const TickTrace&) const = default;
};

struct SimulationResult {
  SimulationMetrics metrics;
  RawTotals totals;
  std::vector<TickTrace> trace;  // empty unless tracing was requested
};

// Runs exactly scenario.max_ticks ticks. Each tick:
//   1. sensor readings from last tick's broadcasts, occupancy and ambient light
//   2. every controller decides against the same pre-tick state
//   3. pedestrians step along their route where ambient + new light >= threshold
//   4. energy and trip counters accumulate
// Throws ControllerError (with tick and pole) if a controller throws or returns
// a non-finite value.
SimulationResult run_simulation(const ScenarioSpec& scenario, const ControllerFactory& factory,
                                bool trace = false, const FitnessWeights& weights = {});

// Controller that always issues the same command.
ControllerFactory constant_controller(ActuatorCommand command);

}  // namespace lumenloop
