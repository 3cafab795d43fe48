#include "lumenloop/dsl/ast.hpp"

#include <algorithm>
#include <set>

namespace lumenloop::dsl {

std::string to_string(const Diagnostic& d) {
  return "line " + std::to_string(d.pos.line) + ", column " + std::to_string(d.pos.column) + ": " +
         (d.severity == Severity::error ? "error: " : "warning: ") + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

namespace {
std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string out = "program rejected";
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) {
      out += "; " + to_string(d);
    }
  }
  return out;
}
}  // namespace

ProgramError::ProgramError(std::vector<Diagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::string_view to_string(Sensor s) {
  switch (s) {
    case Sensor::ambient: return "ambient";
    case Sensor::motion: return "motion";
    case Sensor::signal: return "signal";
    case Sensor::light: return "light";
    case Sensor::ticks_since_motion: return "ticks_since_motion";
    case Sensor::tick: return "tick";
  }
  return "?";
}

std::string_view to_string(ArithOp op) {
  switch (op) {
    case ArithOp::add: return "+";
    case ArithOp::sub: return "-";
    case ArithOp::mul: return "*";
    case ArithOp::div: return "/";
  }
  return "?";
}

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
    case CompareOp::eq: return "==";
    case CompareOp::ne: return "!=";
  }
  return "?";
}

std::optional<Sensor> sensor_from_name(std::string_view name) {
  for (Sensor s : {Sensor::ambient, Sensor::motion, Sensor::signal, Sensor::light, Sensor::ticks_since_motion,
                   Sensor::tick}) {
    if (to_string(s) == name) {
      return s;
    }
  }
  return std::nullopt;
}

ExprPtr make_expr(decltype(Expr::node) node, SourcePos pos) {
  return std::make_shared<const Expr>(Expr{std::move(node), pos});
}

CondPtr make_cond(decltype(Cond::node) node, SourcePos pos) {
  return std::make_shared<const Cond>(Cond{std::move(node), pos});
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Exact bitwise-value comparison; literals come from decimal text so NaN never appears.
bool same_number(double a, double b) { return a == b; }

}  // namespace

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) {
    return false;
  }
  return std::visit(
      overloaded{
          [&](const NumberLit& x) { return same_number(x.value, std::get<NumberLit>(b.node).value); },
          [&](const SensorRef& x) { return x.sensor == std::get<SensorRef>(b.node).sensor; },
          [&](const MemRef& x) { return x.name == std::get<MemRef>(b.node).name; },
          [&](const UnknownRef& x) { return x.name == std::get<UnknownRef>(b.node).name; },
          [&](const Negate& x) { return equal(*x.operand, *std::get<Negate>(b.node).operand); },
          [&](const Arith& x) {
            const auto& y = std::get<Arith>(b.node);
            return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
          },
      },
      a.node);
}

bool equal(const Cond& a, const Cond& b) {
  if (a.node.index() != b.node.index()) {
    return false;
  }
  return std::visit(overloaded{
                        [&](const Compare& x) {
                          const auto& y = std::get<Compare>(b.node);
                          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
                        },
                        [&](const MotionTest&) { return true; },
                        [&](const Not& x) { return equal(*x.operand, *std::get<Not>(b.node).operand); },
                        [&](const Logic& x) {
                          const auto& y = std::get<Logic>(b.node);
                          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
                        },
                    },
                    a.node);
}

namespace {

bool equal_target(const Target& a, const Target& b) { return a.kind == b.kind && a.name == b.name; }

bool equal_stmt(const Statement& a, const Statement& b) {
  if (a.node.index() != b.node.index()) {
    return false;
  }
  if (const auto* x = std::get_if<Assignment>(&a.node)) {
    const auto& y = std::get<Assignment>(b.node);
    return equal_target(x->target, y.target) && equal(*x->value, *y.value);
  }
  const auto& x = std::get<IfStmt>(a.node);
  const auto& y = std::get<IfStmt>(b.node);
  if (!equal(*x.cond, *y.cond) || !equal(x.then_block, y.then_block)) {
    return false;
  }
  if (x.else_block.has_value() != y.else_block.has_value()) {
    return false;
  }
  return !x.else_block || equal(*x.else_block, *y.else_block);
}

void collect_mem(const Expr& e, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const MemRef& m) { out.insert(m.name); },
                 [&](const Negate& n) { collect_mem(*n.operand, out); },
                 [&](const Arith& a) {
                   collect_mem(*a.lhs, out);
                   collect_mem(*a.rhs, out);
                 },
                 [](const auto&) {},
             },
             e.node);
}

void collect_mem(const Cond& c, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const Compare& x) {
                   collect_mem(*x.lhs, out);
                   collect_mem(*x.rhs, out);
                 },
                 [&](const Not& x) { collect_mem(*x.operand, out); },
                 [&](const Logic& x) {
                   collect_mem(*x.lhs, out);
                   collect_mem(*x.rhs, out);
                 },
                 [](const MotionTest&) {},
             },
             c.node);
}

void collect_mem(const Block& block, std::set<std::string>& out) {
  for (const auto& s : block) {
    if (const auto* a = std::get_if<Assignment>(&s.node)) {
      if (a->target.kind == Target::Kind::mem) {
        out.insert(a->target.name);
      }
      collect_mem(*a->value, out);
    } else {
      const auto& i = std::get<IfStmt>(s.node);
      collect_mem(*i.cond, out);
      collect_mem(i.then_block, out);
      if (i.else_block) {
        collect_mem(*i.else_block, out);
      }
    }
  }
}

int depth_of(const Expr& e) {
  return 1 + std::visit(overloaded{
                            [](const Negate& n) { return depth_of(*n.operand); },
                            [](const Arith& a) { return std::max(depth_of(*a.lhs), depth_of(*a.rhs)); },
                            [](const auto&) { return 0; },
                        },
                        e.node);
}

int depth_of(const Cond& c) {
  return 1 + std::visit(overloaded{
                            [](const Compare& x) { return std::max(depth_of(*x.lhs), depth_of(*x.rhs)); },
                            [](const Not& x) { return depth_of(*x.operand); },
                            [](const Logic& x) { return std::max(depth_of(*x.lhs), depth_of(*x.rhs)); },
                            [](const MotionTest&) { return 0; },
                        },
                        c.node);
}

int depth_of(const Block& block) {
  int d = 0;
  for (const auto& s : block) {
    if (const auto* a = std::get_if<Assignment>(&s.node)) {
      d = std::max(d, 1 + depth_of(*a->value));
    } else {
      const auto& i = std::get<IfStmt>(s.node);
      int inner = std::max(depth_of(*i.cond), depth_of(i.then_block));
      if (i.else_block) {
        inner = std::max(inner, depth_of(*i.else_block));
      }
      d = std::max(d, 1 + inner);
    }
  }
  return d;
}

}  // namespace

bool equal(const Block& a, const Block& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal_stmt(a[i], b[i])) {
      return false;
    }
  }
  return true;
}

bool equal(const RuleProgram& a, const RuleProgram& b) { return equal(a.statements, b.statements); }

std::vector<std::string> memory_names(const RuleProgram& program) {
  std::set<std::string> names;
  collect_mem(program.statements, names);
  return {names.begin(), names.end()};
}

int depth(const RuleProgram& program) { return depth_of(program.statements); }

}  // namespace lumenloop::dsl
