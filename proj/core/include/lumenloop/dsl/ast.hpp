#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lumenloop/dsl/diagnostic.hpp"

namespace lumenloop::dsl {

enum class Sensor { ambient, motion, signal, light, ticks_since_motion, tick };
enum class ArithOp { add, sub, mul, div };
enum class CompareOp { lt, le, gt, ge, eq, ne };
enum class LogicOp { op_and, op_or };

std::string_view to_string(Sensor s);
std::string_view to_string(ArithOp op);
std::string_view to_string(CompareOp op);
std::optional<Sensor> sensor_from_name(std::string_view name);

struct Expr;
struct Cond;
using ExprPtr = std::shared_ptr<const Expr>;
using CondPtr = std::shared_ptr<const Cond>;

struct NumberLit {
  double value = 0.0;
};
struct SensorRef {
  Sensor sensor = Sensor::ambient;
};
struct MemRef {
  std::string name;
};
// Identifier that is neither a sensor nor a memory slot; rejected by validate.
struct UnknownRef {
  std::string name;
};
struct Negate {
  ExprPtr operand;
};
struct Arith {
  ArithOp op = ArithOp::add;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<NumberLit, SensorRef, MemRef, UnknownRef, Negate, Arith> node;
  SourcePos pos;
};

struct Compare {
  CompareOp op = CompareOp::lt;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct MotionTest {};
struct Not {
  CondPtr operand;
};
struct Logic {
  LogicOp op = LogicOp::op_and;
  CondPtr lhs;
  CondPtr rhs;
};

struct Cond {
  std::variant<Compare, MotionTest, Not, Logic> node;
  SourcePos pos;
};

struct Target {
  enum class Kind { light, listen, broadcast, mem, other };
  Kind kind = Kind::light;
  std::string name;  // mem slot name, or the raw identifier for Kind::other
};

struct Statement;
using Block = std::vector<Statement>;

struct Assignment {
  Target target;
  ExprPtr value;
};
struct IfStmt {
  CondPtr cond;
  Block then_block;
  std::optional<Block> else_block;
};

struct Statement {
  std::variant<Assignment, IfStmt> node;
  SourcePos pos;
};

// Immutable once built; share through shared_ptr<const RuleProgram>.
struct RuleProgram {
  Block statements;
  std::size_t token_count = 0;
};

ExprPtr make_expr(decltype(Expr::node) node, SourcePos pos = {});
CondPtr make_cond(decltype(Cond::node) node, SourcePos pos = {});

// Structural equality: ignores source positions and token counts.
bool equal(const Expr& a, const Expr& b);
bool equal(const Cond& a, const Cond& b);
bool equal(const Block& a, const Block& b);
bool equal(const RuleProgram& a, const RuleProgram& b);

// Every mem.* name read or written by the program, sorted and unique.
std::vector<std::string> memory_names(const RuleProgram& program);

// Nesting depth over statements, conditions and expressions (a lone literal is 1).
int depth(const RuleProgram& program);

}  // namespace lumenloop::dsl
