#pragma once

#include <string>
#include <vector>

#include "lumenloop/error.hpp"

namespace lumenloop::dsl {

struct SourcePos {
  int line = 1;
  int column = 1;

  auto operator<=>(const SourcePos&) const = default;
};

enum class Severity { warning, error };

struct Diagnostic {
  Severity severity = Severity::error;
  SourcePos pos;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

// "line 3, column 7: error: expected 'then'"
std::string to_string(const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

class LexError : public Error {
 public:
  LexError(SourcePos pos, const std::string& message)
      : Error(to_string(Diagnostic{Severity::error, pos, message})), diagnostic_{Severity::error, pos, message} {}
  const Diagnostic& diagnostic() const noexcept { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message, std::vector<std::string> expected = {})
      : Error(to_string(Diagnostic{Severity::error, pos, message})),
        diagnostic_{Severity::error, pos, message},
        expected_(std::move(expected)) {}
  const Diagnostic& diagnostic() const noexcept { return diagnostic_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  Diagnostic diagnostic_;
  std::vector<std::string> expected_;
};

// Program parsed but failed validation; carries every diagnostic (errors and warnings).
class ProgramError : public Error {
 public:
  explicit ProgramError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

class UnknownBaseline : public Error {
 public:
  using Error::Error;
};

}  // namespace lumenloop::dsl
