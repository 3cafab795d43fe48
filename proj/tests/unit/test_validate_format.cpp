#include <string>

#include "doctest.h"
#include "lumenloop/dsl/builtins.hpp"
#include "lumenloop/dsl/format.hpp"
#include "lumenloop/dsl/parser.hpp"
#include "lumenloop/dsl/validate.hpp"

using namespace lumenloop::dsl;

namespace {

std::vector<Diagnostic> check(std::string_view source) { return validate(parse_program(source)); }

bool mentions(const std::vector<Diagnostic>& ds, Severity sev, std::string_view text) {
  for (const auto& d : ds) {
    if (d.severity == sev && d.message.find(text) != std::string::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("assigning to a sensor is an error") {
  const auto ds = check("ambient = 1");
  CHECK(has_errors(ds));
  CHECK(mentions(ds, Severity::error, "cannot assign to sensor"));
  CHECK(ds[0].pos == SourcePos{1, 1});
  CHECK_THROWS_AS(compile("ambient = 1"), ProgramError);
}

TEST_CASE("out-of-range constant is only a warning") {
  const auto ds = check("light = 2.0");
  CHECK_FALSE(has_errors(ds));
  CHECK(mentions(ds, Severity::warning, "clamped at runtime"));
  CHECK_NOTHROW(compile("light = 2.0"));
  CHECK(mentions(check("broadcast = -1"), Severity::warning, "clamped"));
  CHECK_FALSE(check("listen = 3").empty());
  CHECK(check("light = 1.0").empty());
}

TEST_CASE("unknown identifiers are errors with positions") {
  const auto ds = check("light = 1\nlight = brightness");
  CHECK(mentions(ds, Severity::error, "unknown identifier"));
  CHECK(ds[0].pos == SourcePos{2, 9});
  CHECK(has_errors(check("volume = 1")));
}

TEST_CASE("memory read but never written is a warning") {
  CHECK(mentions(check("light = mem.ghost"), Severity::warning, "ghost"));
  CHECK(check("mem.a = 1 light = mem.a").empty());
}

TEST_CASE("built-in programs validate cleanly") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    CHECK_FALSE(has_errors(validate(parse_program(builtin_source(name)))));
  }
  CHECK(validate(parse_program(builtin_source("iteration3"))).empty());
}

TEST_CASE("depth and size limits") {
  // Redundant parentheses do not add depth; operators do.
  CHECK_FALSE(has_errors(check("light = " + std::string(100, '(') + "1" + std::string(100, ')'))));
  CHECK(mentions(check("light = " + std::string(100, '-') + "1"), Severity::error, "depth"));
  CHECK_FALSE(has_errors(check("light = " + std::string(20, '-') + "1")));
  std::string big;
  for (int i = 0; i < 3400; ++i) big += "light = 1 ";
  CHECK(mentions(check(big), Severity::error, "token"));
}

TEST_CASE("diagnostic rendering") {
  const Diagnostic d{Severity::error, {3, 7}, "expected 'then'"};
  CHECK(to_string(d) == "line 3, column 7: error: expected 'then'");
  CHECK(to_string(Diagnostic{Severity::warning, {1, 1}, "x"}) == "line 1, column 1: warning: x");
}

TEST_CASE("canonical formatting") {
  CHECK(format_program(parse_program("if motion then light=1.0 end")) == "if motion then\n  light = 1.0\nend");
  CHECK(format_program(parse_program("light=1 listen=0.5")) == "light = 1.0\nlisten = 0.5");
  CHECK(format_program(parse_program("if motion then else light = 0 end")) ==
        "if motion then\nelse\n  light = 0.0\nend");
  CHECK(format_program(parse_program("if not motion then end")) == "if not motion then\nend");
}

TEST_CASE("minimal parentheses") {
  auto expr_of = [](std::string_view src) {
    const auto p = parse_program(src);
    return format_expr(*std::get<Assignment>(p.statements[0].node).value);
  };
  CHECK(expr_of("light = (1 + 2) * 3") == "(1.0 + 2.0) * 3.0");
  CHECK(expr_of("light = 1 + (2 * 3)") == "1.0 + 2.0 * 3.0");
  CHECK(expr_of("light = (1 - 2) - 3") == "1.0 - 2.0 - 3.0");
  CHECK(expr_of("light = 1 - (2 - 3)") == "1.0 - (2.0 - 3.0)");
  CHECK(expr_of("light = 1 / (2 * 3)") == "1.0 / (2.0 * 3.0)");
  CHECK(expr_of("light = -(ambient + 1)") == "-(ambient + 1.0)");
  CHECK(expr_of("light = mem.a * -signal") == "mem.a * -signal");

  auto cond_of = [](std::string_view src) {
    const auto p = parse_program(src);
    return format_cond(*std::get<IfStmt>(p.statements[0].node).cond);
  };
  CHECK(cond_of("if (motion or tick > 1) and signal > 0 then end") == "(motion or tick > 1.0) and signal > 0.0");
  CHECK(cond_of("if motion or (tick > 1 and signal > 0) then end") == "motion or tick > 1.0 and signal > 0.0");
  CHECK(cond_of("if not (motion and tick > 1) then end") == "not (motion and tick > 1.0)");
  CHECK(cond_of("if motion or (signal > 0 or tick > 1) then end") == "motion or (signal > 0.0 or tick > 1.0)");
}

TEST_CASE("numbers use the shortest round-trip form with a fraction digit") {
  CHECK(format_number(1.0) == "1.0");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(255.0) == "255.0");
  CHECK(format_number(0.3333333333333333) == "0.3333333333333333");
  CHECK(format_number(1e21) == "1000000000000000000000.0");
  CHECK(format_number(1e-7) == "0.0000001");
}

TEST_CASE("format is idempotent on the built-ins") {
  for (const auto& name : builtin_names()) {
    const std::string once = format_program(parse_program(builtin_source(name)));
    CHECK(format_program(parse_program(once)) == once);
    CHECK(equal(parse_program(once), parse_program(builtin_source(name))));
  }
}

TEST_CASE("built-in controllers") {
  CHECK(format_program(builtin_program("always_on")) == "light = 1.0\nlisten = 1.0\nbroadcast = 0.0");
  CHECK(builtin_source("always_on").find("light = 1.0  listen = 1  broadcast = 0") == 0);
  CHECK_THROWS_AS(builtin_source("iteration9"), UnknownBaseline);
  CHECK(is_builtin("iteration2"));
  CHECK_FALSE(is_builtin("iteration4"));

  SUBCASE("iteration1 always listens and dims after an idle spell") {
    const auto p = builtin_program("iteration1");
    const auto& first = std::get<Assignment>(p.statements[0].node);
    CHECK(first.target.kind == Target::Kind::listen);
    CHECK(format_program(p).find("ticks_since_motion > 5.0") != std::string::npos);
  }
  SUBCASE("iteration3 broadcasts on the rising edge and listens by lamp level") {
    const std::string text = format_program(builtin_program("iteration3"));
    CHECK(text.find("if mem.seen == 0.0 then\n    broadcast = 1.0") != std::string::npos);
    CHECK(text.find("if light < 0.5 then\n  listen = 1.0") != std::string::npos);
  }
}

TEST_CASE("language reference teaches the grammar") {
  const std::string ref = language_reference();
  for (const char* word : {"if_stmt", "ambient", "motion", "signal", "ticks_since_motion", "broadcast", "listen",
                           "mem.", "keeps", "division by zero"}) {
    CAPTURE(word);
    CHECK(ref.find(word) != std::string::npos);
  }
  // The example inside the reference compiles.
  const auto at = ref.find("Example:");
  REQUIRE(at != std::string::npos);
  CHECK_NOTHROW(compile(ref.substr(at + 8)));
}
