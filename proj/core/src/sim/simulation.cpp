#include "lumenloop/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "lumenloop/error.hpp"

namespace lumenloop {
namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

struct Walker {
  std::vector<std::size_t> route;  // pole indices, origin first
  std::size_t step = 0;
  bool active = false;
  bool finished = false;
};

class ConstantController final : public Controller {
 public:
  explicit ConstantController(ActuatorCommand c) : command_(c) {}
  ActuatorCommand decide(const SensorReading&, const ActuatorCommand&) override { return command_; }

 private:
  ActuatorCommand command_;
};

}  // namespace

ActuatorCommand clamp_command(ActuatorCommand c) {
  c.light = clamp01(c.light);
  c.broadcast = clamp01(c.broadcast);
  return c;
}

ControllerFactory constant_controller(ActuatorCommand command) {
  return [command](int) { return std::make_unique<ConstantController>(command); };
}

SimulationResult run_simulation(const ScenarioSpec& scenario, const ControllerFactory& factory, bool trace,
                                const FitnessWeights& weights) {
  const std::size_t n_poles = scenario.poles.size();

  std::vector<std::vector<std::size_t>> neighbors(n_poles);
  for (std::size_t i = 0; i < n_poles; ++i) {
    for (int nb : scenario.poles[i].neighbors) {
      neighbors[i].push_back(*scenario.pole_index(nb));
    }
  }

  std::vector<Walker> walkers(scenario.people.size());
  for (std::size_t k = 0; k < walkers.size(); ++k) {
    const auto& person = scenario.people[k];
    for (int id : shortest_route(scenario, person.origin, person.destination)) {
      walkers[k].route.push_back(*scenario.pole_index(id));
    }
  }

  std::vector<std::unique_ptr<Controller>> controllers;
  controllers.reserve(n_poles);
  for (const auto& pole : scenario.poles) {
    controllers.push_back(factory(pole.id));
  }

  std::vector<ActuatorCommand> commands(n_poles, kInitialCommand);
  std::vector<ActuatorCommand> next(n_poles);
  std::vector<SensorReading> readings(n_poles);
  std::vector<std::uint8_t> idle(n_poles, 255);
  std::vector<int> occupancy(n_poles);

  SimulationResult result;
  RawTotals& totals = result.totals;

  for (int tick = 0; tick < scenario.max_ticks; ++tick) {
    const double ambient = scenario.ambient_at(tick);

    for (std::size_t k = 0; k < walkers.size(); ++k) {
      auto& w = walkers[k];
      if (!w.active && !w.finished && scenario.people[k].start_tick == tick) {
        // A route of length one means the person starts at the destination.
        if (w.route.size() == 1) {
          w.finished = true;
          ++totals.finished;
        } else {
          w.active = true;
        }
      }
    }

    // Phase 1: sense.
    std::fill(occupancy.begin(), occupancy.end(), 0);
    for (const auto& w : walkers) {
      if (w.active) {
        ++occupancy[w.route[w.step]];
      }
    }
    for (std::size_t i = 0; i < n_poles; ++i) {
      SensorReading& r = readings[i];
      r.tick = tick;
      r.ambient = ambient;
      r.motion = occupancy[i] > 0;
      if (r.motion) {
        idle[i] = 0;
      } else if (idle[i] < 255) {
        ++idle[i];
      }
      r.ticks_since_motion = idle[i];
      r.current_light = commands[i].light;
      r.signal = 0.0;
      if (commands[i].listen) {
        for (std::size_t nb : neighbors[i]) {
          r.signal = std::max(r.signal, commands[nb].broadcast);
        }
      }
    }

    // Phase 2: decide. Every controller sees the pre-tick state.
    for (std::size_t i = 0; i < n_poles; ++i) {
      const int pole_id = scenario.poles[i].id;
      ActuatorCommand c;
      try {
        c = controllers[i]->decide(readings[i], commands[i]);
      } catch (const ControllerError&) {
        throw;
      } catch (const std::exception& e) {
        throw ControllerError(tick, pole_id, e.what());
      }
      if (!std::isfinite(c.light) || !std::isfinite(c.broadcast)) {
        throw ControllerError(tick, pole_id, "non-finite actuator value");
      }
      next[i] = clamp_command(c);
    }
    commands.swap(next);

    // Phase 3: move, using the new lamp levels.
    std::vector<PersonTrace> people_trace;
    long long travelling = 0;
    for (std::size_t k = 0; k < walkers.size(); ++k) {
      auto& w = walkers[k];
      bool moved = false;
      const bool was_active = w.active;
      if (w.active) {
        ++travelling;
        const std::size_t at = w.route[w.step];
        if (clamp01(ambient + commands[at].light) >= scenario.movement_threshold) {
          ++w.step;
          moved = true;
          if (w.step + 1 == w.route.size()) {
            w.active = false;
            w.finished = true;
            ++totals.finished;
          }
        }
      }
      if (trace) {
        const std::size_t at = w.route.empty() ? 0 : w.route[w.step];
        people_trace.push_back(
            PersonTrace{scenario.people[k].id, scenario.poles[at].id, was_active, moved, w.finished});
      }
    }

    // Phase 4: accumulate.
    for (const auto& c : commands) {
      totals.light_sum += c.light;
    }
    totals.active_ticks += travelling;

    if (trace) {
      TickTrace t;
      t.tick = tick;
      t.poles.reserve(n_poles);
      for (std::size_t i = 0; i < n_poles; ++i) {
        t.poles.push_back(PoleTrace{scenario.poles[i].id, readings[i], commands[i]});
      }
      t.people = std::move(people_trace);
      result.trace.push_back(std::move(t));
    }
  }

  result.metrics = compute_metrics(totals, scenario);
  result.metrics.fitness = compute_fitness(result.metrics, weights);
  return result;
}

}  // namespace lumenloop
