#pragma once

#include <map>
#include <memory>
#include <string>

#include "lumenloop/dsl/ast.hpp"
#include "lumenloop/simulation.hpp"

namespace lumenloop::dsl {

// Per-pole mutable state. Never share one context between concurrent evaluations.
struct EvalContext {
  std::map<std::string, double> memory;
  ActuatorCommand previous = kInitialCommand;

  bool operator==(const EvalContext&) const = default;
};

// Context with every mem slot of `program` initialised to 0.
EvalContext make_context(const RuleProgram& program);

// Runs the statements in order against one reading. The language is total:
// division by zero yields 0, non-finite intermediates saturate (NaN becomes 0),
// light and broadcast are clamped to [0, 1], listen is on iff its value >= 0.5.
// Actuators the program leaves untouched keep ctx.previous. Updates
// ctx.memory and sets ctx.previous to the returned command.
ActuatorCommand evaluate(const RuleProgram& program, const SensorReading& reading, EvalContext& ctx);

// Sim-core controller running one program per pole with private context.
class RuleController final : public Controller {
 public:
  explicit RuleController(std::shared_ptr<const RuleProgram> program);
  ActuatorCommand decide(const SensorReading& reading, const ActuatorCommand& previous) override;
  const EvalContext& context() const noexcept { return ctx_; }

 private:
  std::shared_ptr<const RuleProgram> program_;
  EvalContext ctx_;
};

ControllerFactory rule_controller_factory(std::shared_ptr<const RuleProgram> program);

}  // namespace lumenloop::dsl
