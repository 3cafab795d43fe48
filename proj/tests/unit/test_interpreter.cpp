#include <cmath>
#include <limits>

#include "doctest.h"
#include "lumenloop/dsl/interpreter.hpp"
#include "lumenloop/dsl/validate.hpp"

using namespace lumenloop;
using namespace lumenloop::dsl;

namespace {

ActuatorCommand run_once(std::string_view source, const SensorReading& r, ActuatorCommand previous = kInitialCommand) {
  const RuleProgram p = compile(source);
  EvalContext ctx = make_context(p);
  ctx.previous = previous;
  return evaluate(p, r, ctx);
}

}  // namespace

TEST_CASE("light follows ambient, other actuators retained") {
  SensorReading r;
  r.ambient = 0.3;
  const ActuatorCommand prev{0.9, false, 0.4};
  const ActuatorCommand c = run_once("light = ambient", r, prev);
  CHECK(c.light == 0.3);
  CHECK(c.listen == false);
  CHECK(c.broadcast == 0.4);
}

TEST_CASE("dim after an idle spell") {
  SensorReading r;
  r.ticks_since_motion = 7;
  CHECK(run_once("if ticks_since_motion > 5 then light = 0.1 end", r, {1.0, true, 0.0}).light == 0.1);
  r.ticks_since_motion = 5;
  CHECK(run_once("if ticks_since_motion > 5 then light = 0.1 end", r, {1.0, true, 0.0}).light == 1.0);
}

TEST_CASE("memory recurrence across ticks") {
  const RuleProgram p = compile("mem.c = mem.c + 1  broadcast = mem.c / (mem.c + 1)");
  EvalContext ctx = make_context(p);
  CHECK(ctx.memory.at("c") == 0.0);
  SensorReading r;
  CHECK(evaluate(p, r, ctx).broadcast == 0.5);
  CHECK(evaluate(p, r, ctx).broadcast == doctest::Approx(2.0 / 3.0));
  CHECK(evaluate(p, r, ctx).broadcast == 0.75);
  CHECK(ctx.memory.at("c") == 3.0);
}

TEST_CASE("totality") {
  SensorReading r;
  SUBCASE("division by zero yields zero") {
    CHECK(run_once("light = 1 / 0", r).light == 0.0);
    CHECK(run_once("mem.x = 5 / (ambient - ambient) light = mem.x + 0.5", r).light == 0.5);
  }
  SUBCASE("overflow saturates instead of becoming infinite") {
    const RuleProgram p = compile("mem.x = 100000000000000000000 * 100000000000000000000 * "
                                  "100000000000000000000 * 100000000000000000000 * 100000000000000000000 * "
                                  "100000000000000000000 * 100000000000000000000 * 100000000000000000000 * "
                                  "100000000000000000000 * 100000000000000000000 * 100000000000000000000 * "
                                  "100000000000000000000 * 100000000000000000000 * 100000000000000000000 * "
                                  "100000000000000000000 * 100000000000000000000\n"
                                  "mem.y = mem.x - -mem.x  mem.z = mem.y - mem.y  light = mem.y");
    EvalContext ctx = make_context(p);
    const ActuatorCommand c = evaluate(p, r, ctx);
    CHECK(ctx.memory.at("x") == std::numeric_limits<double>::max());
    CHECK(ctx.memory.at("y") == std::numeric_limits<double>::max());
    CHECK(ctx.memory.at("z") == 0.0);
    CHECK(c.light == 1.0);
  }
  SUBCASE("clamping") {
    CHECK(run_once("light = 7", r).light == 1.0);
    CHECK(run_once("light = -3", r).light == 0.0);
    CHECK(run_once("broadcast = 2", r).broadcast == 1.0);
    CHECK(run_once("broadcast = -0.5", r).broadcast == 0.0);
  }
  SUBCASE("listen threshold") {
    CHECK(run_once("listen = 0.5", r, {0, false, 0}).listen);
    CHECK_FALSE(run_once("listen = 0.49", r).listen);
    CHECK(run_once("listen = 12", r, {0, false, 0}).listen);
  }
}

TEST_CASE("sensor values are visible to the program") {
  SensorReading r{0.25, true, 0.75, 0.5, 9, 14};
  CHECK(run_once("light = ambient", r).light == 0.25);
  CHECK(run_once("light = motion", r).light == 1.0);
  CHECK(run_once("light = signal", r).light == 0.75);
  CHECK(run_once("light = light", r).light == 0.5);
  CHECK(run_once("light = ticks_since_motion / 18", r).light == 0.5);
  CHECK(run_once("light = tick / 28", r).light == 0.5);
  CHECK(run_once("if motion then light = 0.2 end", r).light == 0.2);
}

TEST_CASE("light sensor reads the lamp before this tick's decision") {
  SensorReading r;
  r.current_light = 0.8;
  const ActuatorCommand c = run_once("light = 0.1  broadcast = light", r, {0.8, true, 0.0});
  CHECK(c.light == 0.1);
  CHECK(c.broadcast == 0.8);
}

TEST_CASE("conditions") {
  SensorReading r{0.2, false, 0.6, 0.0, 3, 0};
  CHECK(run_once("if not motion and signal >= 0.6 then light = 1 end", r).light == 1.0);
  CHECK(run_once("if motion or signal != 0.6 then light = 1 end", r).light == 0.0);
  CHECK(run_once("if ambient == 0.2 then light = 1 else light = 0.5 end", r).light == 1.0);
  CHECK(run_once("if ambient < 0.2 then light = 1 else light = 0.5 end", r).light == 0.5);
  CHECK(run_once("if ambient <= 0.2 then light = 1 end", r).light == 1.0);
  CHECK(run_once("if (motion or ticks_since_motion > 2) and tick == 0 then light = 1 end", r).light == 1.0);
}

TEST_CASE("rule controller keeps per-pole memory and honours the simulator's previous command") {
  auto program = std::make_shared<const RuleProgram>(compile("mem.n = mem.n + 1  light = mem.n / 10"));
  RuleController a(program);
  RuleController b(program);
  SensorReading r;
  a.decide(r, kInitialCommand);
  a.decide(r, kInitialCommand);
  CHECK(a.decide(r, kInitialCommand).light == doctest::Approx(0.3));
  CHECK(b.decide(r, kInitialCommand).light == doctest::Approx(0.1));
  CHECK(a.context().memory.at("n") == 3.0);

  RuleController keep(std::make_shared<const RuleProgram>(compile("broadcast = 1")));
  const ActuatorCommand c = keep.decide(r, {0.4, false, 0.0});
  CHECK(c.light == 0.4);
  CHECK_FALSE(c.listen);
}
