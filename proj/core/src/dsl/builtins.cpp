#include "lumenloop/dsl/builtins.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "lumenloop/dsl/validate.hpp"

namespace lumenloop::dsl {
namespace {

constexpr std::string_view kIteration1 = R"(# Listen at all times whatever the ambient light, follow the neighbours'
# signal, and dim once no motion has been seen for a few cycles.
listen = 1
if motion then
  light = 1.0
  broadcast = 1.0
else
  broadcast = 0.0
  if signal > 0.5 then
    light = 0.6
  else
    if ticks_since_motion > 5 then
      light = 0.1
    end
  end
end
)";

constexpr std::string_view kIteration2 = R"(# Pre-light when a neighbour reports movement; run subdued when it is
# very dark and scale with the ambient level otherwise.
listen = 1
if motion then
  broadcast = 1.0
  if ambient < 0.1 then
    light = 0.8
  else
    light = 1.0 - ambient
  end
else
  broadcast = 0.0
  if signal > 0.5 then
    light = 0.5
  else
    light = 0.0
  end
end
)";

constexpr std::string_view kIteration3 = R"(# Signal only on the first tick of a motion episode, listen only while
# the lamp is dim, and fade out geometrically when idle.
if motion then
  if mem.seen == 0 then
    broadcast = 1.0
  else
    broadcast = 0.0
  end
  mem.seen = 1
  light = 1.0 - ambient
else
  mem.seen = 0
  broadcast = 0.0
  if signal > 0.5 then
    light = 0.5
  else
    light = light * 0.5
  end
end
if light < 0.5 then
  listen = 1
else
  listen = 0
end
)";

constexpr std::string_view kAlwaysOn = "light = 1.0  listen = 1  broadcast = 0\n";
constexpr std::string_view kAlwaysOff = "light = 0.0  listen = 0  broadcast = 0\n";

constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kBuiltins{{
    {"iteration1", kIteration1},
    {"iteration2", kIteration2},
    {"iteration3", kIteration3},
    {"always_on", kAlwaysOn},
    {"always_off", kAlwaysOff},
}};

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : kBuiltins) {
      out.emplace_back(name);
    }
    return out;
  }();
  return names;
}

bool is_builtin(std::string_view name) {
  return std::any_of(kBuiltins.begin(), kBuiltins.end(), [&](const auto& b) { return b.first == name; });
}

std::string_view builtin_source(std::string_view name) {
  for (const auto& [n, src] : kBuiltins) {
    if (n == name) {
      return src;
    }
  }
  throw UnknownBaseline("unknown built-in controller '" + std::string(name) + "'");
}

RuleProgram builtin_program(std::string_view name) { return compile(builtin_source(name)); }

std::string language_reference() {
  return R"ref(CONTROLLER LANGUAGE

Every pole runs the same program once per tick. Statements execute top to
bottom; there are no loops or functions.

Sensors (read-only, usable in expressions):
  ambient             ambient light level in [0, 1]
  motion              1 if a pedestrian is at this pole, else 0 (also usable alone as a condition)
  signal              strongest neighbour broadcast from the previous tick, in [0, 1];
                      always 0 unless this pole was listening
  light               this pole's lamp level before this tick's decision
  ticks_since_motion  ticks since motion was last seen here (0 while motion is present, saturates at 255)
  tick                current tick number, starting at 0

Actuators (assign with '='):
  light      lamp level, clamped to [0, 1]
  listen     receiver on when the assigned value is >= 0.5
  broadcast  value sent to neighbours for the next tick, clamped to [0, 1]

Memory: mem.<name> holds a number per pole across ticks; it starts at 0.

Retained values: an actuator that the program does not assign this tick keeps
the value it had on the previous tick. At tick 0 every pole starts with
light = 0, listen = 1, broadcast = 0.

Arithmetic never fails: division by zero yields 0.

Grammar (EBNF):
  program    := { statement } ;
  statement  := assignment | if_stmt ;
  assignment := target "=" expr ;
  target     := "light" | "listen" | "broadcast" | "mem" "." ident ;
  if_stmt    := "if" cond "then" { statement } [ "else" { statement } ] "end" ;
  cond       := or_cond ;
  or_cond    := and_cond { "or" and_cond } ;
  and_cond   := not_cond { "and" not_cond } ;
  not_cond   := [ "not" ] ( comparison | "(" cond ")" | "motion" ) ;
  comparison := expr ( "<" | "<=" | ">" | ">=" | "==" | "!=" ) expr ;
  expr       := term { ( "+" | "-" ) term } ;
  term       := factor { ( "*" | "/" ) factor } ;
  factor     := number | sensor | "mem" "." ident | "(" expr ")" | "-" factor ;
  sensor     := "ambient" | "motion" | "signal" | "light" | "ticks_since_motion" | "tick" ;

Numbers are plain decimals such as 0.25 or 3. Comments start with '#' and
run to the end of the line. Line breaks are not significant.

Example:
  listen = 1
  if motion then
    light = 1.0
    broadcast = 1.0
  else
    broadcast = 0.0
    if ticks_since_motion > 3 then
      light = 0.1
    end
  end
)ref";
}

}  // namespace lumenloop::dsl
