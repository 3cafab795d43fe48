#pragma once

#include <string>

#include "lumenloop/dsl/ast.hpp"

namespace lumenloop::dsl {

// Canonical text: one statement per line, two-space indentation inside
// blocks, single spaces around operators, minimal parentheses, numbers in
// shortest round-trip decimal form with at least one fraction digit.
// parse_program(format_program(p)) is structurally equal to p.
std::string format_program(const RuleProgram& program);

std::string format_expr(const Expr& expr);
std::string format_cond(const Cond& cond);
std::string format_number(double value);

}  // namespace lumenloop::dsl
