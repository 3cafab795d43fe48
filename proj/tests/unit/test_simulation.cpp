#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "lumenloop/dsl/builtins.hpp"
#include "lumenloop/dsl/interpreter.hpp"
#include "lumenloop/dsl/validate.hpp"
#include "lumenloop/error.hpp"
#include "lumenloop/simulation.hpp"

using namespace lumenloop;
using nlohmann::json;

namespace {

ScenarioSpec line_scenario(int poles, int max_ticks, const std::vector<PersonSpec>& people) {
  json doc{{"name", "line"}, {"max_ticks", max_ticks}, {"people", json::array()}, {"poles", json::array()}};
  for (int i = 0; i < poles; ++i) {
    json nb = json::array();
    if (i > 0) nb.push_back(i - 1);
    if (i + 1 < poles) nb.push_back(i + 1);
    doc["poles"].push_back({{"id", i}, {"neighbors", nb}});
  }
  for (const auto& p : people) {
    doc["people"].push_back(
        {{"id", p.id}, {"origin", p.origin}, {"destination", p.destination}, {"start_tick", p.start_tick}});
  }
  return load_scenario(doc.dump());
}

ControllerFactory rules(std::string_view source) {
  return dsl::rule_controller_factory(std::make_shared<const dsl::RuleProgram>(dsl::compile(source)));
}

// Scripted controller: pole `who` broadcasts 1 at `at` only; pole `deaf`
// turns listening off at `deaf_at`.
class Scripted final : public Controller {
 public:
  Scripted(int pole, int who, int at, int deaf, int deaf_at)
      : pole_(pole), who_(who), at_(at), deaf_(deaf), deaf_at_(deaf_at) {}
  ActuatorCommand decide(const SensorReading& r, const ActuatorCommand& prev) override {
    ActuatorCommand c = prev;
    c.broadcast = (pole_ == who_ && r.tick == at_) ? 1.0 : 0.0;
    if (pole_ == deaf_) {
      c.listen = r.tick < deaf_at_;
    }
    return c;
  }

 private:
  int pole_, who_, at_, deaf_, deaf_at_;
};

class Throwing final : public Controller {
 public:
  ActuatorCommand decide(const SensorReading& r, const ActuatorCommand& prev) override {
    if (r.tick == 3) throw std::runtime_error("boom");
    return prev;
  }
};

class NotFinite final : public Controller {
 public:
  ActuatorCommand decide(const SensorReading&, const ActuatorCommand& prev) override {
    ActuatorCommand c = prev;
    c.light = std::nan("");
    return c;
  }
};

}  // namespace

TEST_CASE("one pole, nobody walking, full light") {
  const ScenarioSpec s = line_scenario(1, 10, {});
  const auto r = run_simulation(s, rules("light = 1.0"));
  CHECK(r.metrics.energy_pct == 100.0);
  CHECK(r.metrics.people_pct == 100.0);
  CHECK(r.metrics.trip_pct == 0.0);
  CHECK(r.metrics.fitness == doctest::Approx(100.0 - 40.0));
}

TEST_CASE("two-pole line with the lamp on: one step, one active tick") {
  const ScenarioSpec s = line_scenario(2, 10, {{0, 0, 1, 0}});
  const auto r = run_simulation(s, rules("light = 1.0"), true);
  REQUIRE(r.trace.size() == 10);
  // The lamp decided in tick 0 is already in effect for the movement phase.
  CHECK(r.trace[0].people[0].moved);
  CHECK(r.trace[0].people[0].finished);
  CHECK(r.trace[0].people[0].pole_id == 1);
  CHECK_FALSE(r.trace[1].people[0].active);
  CHECK(r.totals.active_ticks == 1);
  CHECK(r.totals.finished == 1);
  CHECK(r.metrics.people_pct == 100.0);
  CHECK(r.metrics.trip_pct == doctest::Approx(10.0));
}

TEST_CASE("two-pole line with the lamp off: nobody moves") {
  const ScenarioSpec s = line_scenario(2, 10, {{0, 0, 1, 0}});
  const auto r = run_simulation(s, rules("light = 0.0"));
  CHECK(r.metrics.people_pct == 0.0);
  CHECK(r.metrics.energy_pct == 0.0);
  CHECK(r.metrics.trip_pct == 100.0);
}

TEST_CASE("full light on built-in scenarios: hand-counted metrics") {
  // Every walker needs 4 hops on scenario1 and is active for exactly 4 ticks.
  const auto r1 = run_simulation(builtin_scenario("scenario1"), constant_controller({1.0, true, 0.0}));
  CHECK(r1.metrics.people_pct == 100.0);
  CHECK(r1.metrics.energy_pct == 100.0);
  CHECK(r1.totals.active_ticks == 12);
  CHECK(r1.metrics.trip_pct == doctest::Approx(100.0 * 12 / 180));

  // scenario2: corner-to-corner routes are 8 hops, 2 -> 22 is 4 and 10 -> 14 is 4.
  const auto r2 = run_simulation(builtin_scenario("scenario2"), constant_controller({1.0, true, 0.0}));
  CHECK(r2.metrics.people_pct == 100.0);
  CHECK(r2.totals.active_ticks == 8 * 4 + 4 + 4);
  CHECK(r2.metrics.trip_pct == doctest::Approx(100.0 * 40 / 600));
}

TEST_CASE("all lamps off at night") {
  SUBCASE("built-in scenario1: trip counts from each start tick") {
    const auto r = run_simulation(builtin_scenario("scenario1"), rules("light = 0.0"));
    CHECK(r.metrics.people_pct == 0.0);
    CHECK(r.metrics.energy_pct == 0.0);
    CHECK(r.totals.active_ticks == 60 + 55 + 50);
    CHECK(r.metrics.trip_pct == doctest::Approx(100.0 * 165 / 180));
  }
  SUBCASE("every walker starting at tick 0 gives trip 100") {
    const ScenarioSpec s = load_scenario_file(std::string(LUMENLOOP_DATA_DIR) + "/scenarios/grid3_simultaneous.json");
    const auto r = run_simulation(s, rules("light = 0.0"));
    CHECK(r.metrics.people_pct == 0.0);
    CHECK(r.metrics.trip_pct == 100.0);
  }
}

TEST_CASE("ambient light alone can carry walkers") {
  const ScenarioSpec s = line_scenario(3, 10, {{0, 0, 2, 0}});
  ScenarioSpec lit = s;
  lit.ambient_schedule = {{0, 0.6}};
  const auto r = run_simulation(lit, rules("light = 0.0"));
  CHECK(r.metrics.people_pct == 100.0);
  CHECK(r.totals.active_ticks == 2);
  // Ambient plus lamp is what counts: 0.3 + 0.2 reaches 0.5.
  lit.ambient_schedule = {{0, 0.3}};
  CHECK(run_simulation(lit, rules("light = 0.2")).metrics.people_pct == 100.0);
  CHECK(run_simulation(lit, rules("light = 0.1")).metrics.people_pct == 0.0);
}

TEST_CASE("metric arithmetic") {
  ScenarioSpec s = line_scenario(2, 10, {{0, 0, 1, 0}, {1, 1, 0, 0}});
  SUBCASE("one finishes, one never moves") {
    const auto m = compute_metrics(RawTotals{0.0, 1, 3 + 10}, s);
    CHECK(m.people_pct == 50.0);
    CHECK(m.trip_pct == 65.0);
  }
  SUBCASE("half the time active") {
    ScenarioSpec one = line_scenario(2, 10, {{0, 0, 1, 0}});
    const auto m = compute_metrics(RawTotals{20.0, 1, 5}, one);
    CHECK(m.trip_pct == 50.0);
    CHECK(m.people_pct == 100.0);
    CHECK(m.energy_pct == 100.0);
  }
}

TEST_CASE("walker already at the destination finishes on arrival") {
  const ScenarioSpec s = line_scenario(2, 10, {{0, 1, 1, 4}});
  const auto r = run_simulation(s, rules("light = 0.0"));
  CHECK(r.metrics.people_pct == 100.0);
  CHECK(r.totals.active_ticks == 0);
}

TEST_CASE("walkers wait for their start tick") {
  const ScenarioSpec s = line_scenario(2, 10, {{0, 0, 1, 6}});
  const auto r = run_simulation(s, rules("light = 1.0"), true);
  for (int t = 0; t < 6; ++t) {
    CHECK_FALSE(r.trace[t].people[0].active);
  }
  CHECK(r.trace[6].people[0].moved);
  CHECK(r.totals.active_ticks == 1);
}

TEST_CASE("determinism: repeated runs are bit-identical") {
  for (const char* name : {"scenario1", "scenario2"}) {
    const ScenarioSpec s = builtin_scenario(name);
    for (const auto& b : dsl::builtin_names()) {
      const auto program = std::make_shared<const dsl::RuleProgram>(dsl::builtin_program(b));
      const auto a = run_simulation(s, dsl::rule_controller_factory(program), true);
      const auto c = run_simulation(s, dsl::rule_controller_factory(program), true);
      CHECK(a.metrics == c.metrics);
      CHECK(a.trace == c.trace);
    }
  }
}

TEST_CASE("energy grows strictly with a constant lamp level") {
  for (const char* name : {"scenario1", "scenario2"}) {
    const ScenarioSpec s = builtin_scenario(name);
    double last = -1.0;
    for (double level : {0.2, 0.5, 1.0}) {
      const double e = run_simulation(s, constant_controller({level, true, 0.0})).metrics.energy_pct;
      CHECK(e == doctest::Approx(100.0 * level));
      CHECK(e > last);
      last = e;
    }
  }
}

TEST_CASE("signal causality") {
  const ScenarioSpec s = line_scenario(3, 10, {});
  SUBCASE("visible to a listening neighbour exactly one tick later") {
    const auto r = run_simulation(s, [](int pole) { return std::make_unique<Scripted>(pole, 0, 3, -1, 0); }, true);
    for (int t = 0; t < 10; ++t) {
      CAPTURE(t);
      CHECK(r.trace[t].poles[1].reading.signal == (t == 4 ? 1.0 : 0.0));
      CHECK(r.trace[t].poles[0].reading.signal == 0.0);
      CHECK(r.trace[t].poles[2].reading.signal == 0.0);  // not adjacent to pole 0
    }
  }
  SUBCASE("invisible when the neighbour is not listening") {
    // Pole 1 stops listening from its tick-3 decision on, so at tick 4 it is deaf.
    const auto r = run_simulation(s, [](int pole) { return std::make_unique<Scripted>(pole, 0, 3, 1, 3); }, true);
    for (int t = 0; t < 10; ++t) {
      CHECK(r.trace[t].poles[1].reading.signal == 0.0);
    }
  }
  SUBCASE("a pole listening at tick 4 but deaf afterwards still hears it") {
    const auto r = run_simulation(s, [](int pole) { return std::make_unique<Scripted>(pole, 0, 3, 1, 5); }, true);
    CHECK(r.trace[4].poles[1].reading.signal == 1.0);
  }
}

TEST_CASE("sensor readings reflect occupancy, idle time and the lamp in effect") {
  const ScenarioSpec s = line_scenario(3, 8, {{0, 0, 2, 0}});
  const auto r = run_simulation(s, rules("light = 1.0"), true);
  // Tick 0: walker at pole 0, moves to 1. Tick 1: at 1, moves to 2 and finishes.
  CHECK(r.trace[0].poles[0].reading.motion);
  CHECK(r.trace[0].poles[0].reading.ticks_since_motion == 0);
  CHECK(r.trace[0].poles[1].reading.ticks_since_motion == 255);
  CHECK(r.trace[0].poles[0].reading.current_light == 0.0);
  CHECK(r.trace[1].poles[0].reading.current_light == 1.0);
  CHECK(r.trace[1].poles[1].reading.motion);
  CHECK(r.trace[1].poles[0].reading.ticks_since_motion == 1);
  CHECK(r.trace[2].poles[2].reading.motion == false);  // finished walkers leave the network
  CHECK(r.trace[5].poles[0].reading.ticks_since_motion == 5);
}

TEST_CASE("ticks_since_motion saturates at 255") {
  const ScenarioSpec s = line_scenario(2, 300, {{0, 0, 1, 0}});
  const auto r = run_simulation(s, rules("light = 1.0"), true);
  CHECK(r.trace[200].poles[0].reading.ticks_since_motion == 200);
  CHECK(r.trace[299].poles[0].reading.ticks_since_motion == 255);
}

TEST_CASE("initial actuator state and retention") {
  const ScenarioSpec s = line_scenario(2, 3, {});
  const auto r = run_simulation(s, rules("if tick == 0 then light = 0.7 end"), true);
  CHECK(r.trace[0].poles[0].command.light == 0.7);
  CHECK(r.trace[0].poles[0].command.listen);
  CHECK(r.trace[2].poles[0].command.light == 0.7);
}

TEST_CASE("conservation bounds hold for every built-in") {
  for (const char* name : {"scenario1", "scenario2"}) {
    const ScenarioSpec s = builtin_scenario(name);
    for (const auto& b : dsl::builtin_names()) {
      const auto m =
          run_simulation(s, dsl::rule_controller_factory(std::make_shared<const dsl::RuleProgram>(
                                dsl::builtin_program(b))))
              .metrics;
      CHECK(m.energy_pct >= 0.0);
      CHECK(m.energy_pct <= 100.0);
      CHECK(m.trip_pct >= 0.0);
      CHECK(m.trip_pct <= 100.0);
      const double k = m.people_pct * static_cast<double>(s.people.size()) / 100.0;
      CHECK(std::abs(k - std::round(k)) < 1e-9);
    }
  }
}

TEST_CASE("controller faults carry tick and pole") {
  const ScenarioSpec s = line_scenario(2, 10, {});
  try {
    run_simulation(s, [](int) { return std::make_unique<Throwing>(); });
    FAIL("expected ControllerError");
  } catch (const ControllerError& e) {
    CHECK(e.tick() == 3);
    CHECK(e.pole_id() == 0);
  }
  CHECK_THROWS_AS(run_simulation(s, [](int) { return std::make_unique<NotFinite>(); }), ControllerError);
}
