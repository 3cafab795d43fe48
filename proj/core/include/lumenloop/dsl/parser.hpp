#pragma once

#include <span>
#include <string_view>

#include "lumenloop/dsl/ast.hpp"
#include "lumenloop/dsl/lexer.hpp"

namespace lumenloop::dsl {

// Hard recursion guard for the parser itself. validate() enforces the much
// tighter program limit (kMaxDepth).
inline constexpr int kParserNestingLimit = 512;

// Recursive-descent parser for the rule grammar. Precedence, loosest first:
// or, and, not, comparison; '+' '-' below '*' '/'; unary minus binds tightest.
// Throws ParseError with the position and the set of expected tokens.
RuleProgram parse(std::span<const Token> tokens);

// tokenize + parse.
RuleProgram parse_program(std::string_view source);

}  // namespace lumenloop::dsl
