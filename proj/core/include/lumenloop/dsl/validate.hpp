#pragma once

#include <vector>

#include "lumenloop/dsl/ast.hpp"

namespace lumenloop::dsl {

inline constexpr int kMaxDepth = 64;
inline constexpr std::size_t kMaxTokens = 10'000;

// Static checks; never throws. Errors: assignment to a sensor, unknown
// identifiers, depth or size limits. Warnings: constants outside [0, 1]
// assigned to an actuator, memory slots read but never written.
std::vector<Diagnostic> validate(const RuleProgram& program);

// tokenize + parse + validate. Throws LexError, ParseError, or ProgramError
// when validation reports at least one error.
RuleProgram compile(std::string_view source);

}  // namespace lumenloop::dsl
