#include "lumenloop/dsl/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lumenloop::dsl {
namespace {

double saturate(double v) {
  if (std::isnan(v)) {
    return 0.0;
  }
  constexpr double kMax = std::numeric_limits<double>::max();
  return std::clamp(v, -kMax, kMax);
}

class Evaluator {
 public:
  Evaluator(const SensorReading& reading, EvalContext& ctx) : reading_(reading), ctx_(ctx) {}

  ActuatorCommand run(const Block& block) {
    command_ = ctx_.previous;
    exec(block);
    return command_;
  }

 private:
  void exec(const Block& block) {
    for (const auto& s : block) {
      if (const auto* a = std::get_if<Assignment>(&s.node)) {
        assign(*a);
      } else {
        const auto& i = std::get<IfStmt>(s.node);
        if (test(*i.cond)) {
          exec(i.then_block);
        } else if (i.else_block) {
          exec(*i.else_block);
        }
      }
    }
  }

  void assign(const Assignment& a) {
    const double v = value(*a.value);
    switch (a.target.kind) {
      case Target::Kind::light: command_.light = std::clamp(v, 0.0, 1.0); break;
      case Target::Kind::broadcast: command_.broadcast = std::clamp(v, 0.0, 1.0); break;
      case Target::Kind::listen: command_.listen = v >= 0.5; break;
      case Target::Kind::mem: ctx_.memory[a.target.name] = v; break;
      case Target::Kind::other: break;  // rejected by validate; a no-op keeps evaluation total
    }
  }

  double sensor(Sensor s) const {
    switch (s) {
      case Sensor::ambient: return reading_.ambient;
      case Sensor::motion: return reading_.motion ? 1.0 : 0.0;
      case Sensor::signal: return reading_.signal;
      case Sensor::light: return reading_.current_light;
      case Sensor::ticks_since_motion: return reading_.ticks_since_motion;
      case Sensor::tick: return reading_.tick;
    }
    return 0.0;
  }

  double value(const Expr& e) const {
    if (const auto* n = std::get_if<NumberLit>(&e.node)) {
      return saturate(n->value);
    }
    if (const auto* s = std::get_if<SensorRef>(&e.node)) {
      return saturate(sensor(s->sensor));
    }
    if (const auto* m = std::get_if<MemRef>(&e.node)) {
      const auto it = ctx_.memory.find(m->name);
      return it == ctx_.memory.end() ? 0.0 : it->second;
    }
    if (std::holds_alternative<UnknownRef>(e.node)) {
      return 0.0;
    }
    if (const auto* neg = std::get_if<Negate>(&e.node)) {
      return -value(*neg->operand);
    }
    const auto& a = std::get<Arith>(e.node);
    const double l = value(*a.lhs);
    const double r = value(*a.rhs);
    switch (a.op) {
      case ArithOp::add: return saturate(l + r);
      case ArithOp::sub: return saturate(l - r);
      case ArithOp::mul: return saturate(l * r);
      case ArithOp::div: return r == 0.0 ? 0.0 : saturate(l / r);
    }
    return 0.0;
  }

  bool test(const Cond& c) const {
    if (const auto* cmp = std::get_if<Compare>(&c.node)) {
      const double l = value(*cmp->lhs);
      const double r = value(*cmp->rhs);
      switch (cmp->op) {
        case CompareOp::lt: return l < r;
        case CompareOp::le: return l <= r;
        case CompareOp::gt: return l > r;
        case CompareOp::ge: return l >= r;
        case CompareOp::eq: return l == r;
        case CompareOp::ne: return l != r;
      }
    }
    if (std::holds_alternative<MotionTest>(c.node)) {
      return reading_.motion;
    }
    if (const auto* n = std::get_if<Not>(&c.node)) {
      return !test(*n->operand);
    }
    const auto& l = std::get<Logic>(c.node);
    if (l.op == LogicOp::op_and) {
      return test(*l.lhs) && test(*l.rhs);
    }
    return test(*l.lhs) || test(*l.rhs);
  }

  const SensorReading& reading_;
  EvalContext& ctx_;
  ActuatorCommand command_;
};

}  // namespace

EvalContext make_context(const RuleProgram& program) {
  EvalContext ctx;
  for (const auto& name : memory_names(program)) {
    ctx.memory.emplace(name, 0.0);
  }
  return ctx;
}

ActuatorCommand evaluate(const RuleProgram& program, const SensorReading& reading, EvalContext& ctx) {
  ActuatorCommand out = Evaluator(reading, ctx).run(program.statements);
  ctx.previous = out;
  return out;
}

RuleController::RuleController(std::shared_ptr<const RuleProgram> program)
    : program_(std::move(program)), ctx_(make_context(*program_)) {}

ActuatorCommand RuleController::decide(const SensorReading& reading, const ActuatorCommand& previous) {
  ctx_.previous = previous;
  return evaluate(*program_, reading, ctx_);
}

ControllerFactory rule_controller_factory(std::shared_ptr<const RuleProgram> program) {
  return [program = std::move(program)](int) { return std::make_unique<RuleController>(program); };
}

}  // namespace lumenloop::dsl
