#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lumenloop/dsl/ast.hpp"

namespace lumenloop::dsl {

// iteration1, iteration2, iteration3, always_on, always_off
const std::vector<std::string>& builtin_names();
bool is_builtin(std::string_view name);

// Source text of a built-in controller. Throws UnknownBaseline.
std::string_view builtin_source(std::string_view name);

// Compiled built-in controller. Throws UnknownBaseline.
RuleProgram builtin_program(std::string_view name);

// Language reference handed to the language model: sensors, actuators,
// grammar and evaluation semantics.
std::string language_reference();

}  // namespace lumenloop::dsl
