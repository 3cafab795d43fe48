#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lumenloop/dsl/ast.hpp"

namespace lumenloop::loop {

class NoCodeBlock : public Error {
 public:
  using Error::Error;
};

struct FencedBlock {
  std::string label;        // text after the opening backticks, trimmed
  std::string code;         // lines between the fences
  std::size_t begin = 0;    // offset of the opening fence
  std::size_t end = 0;      // offset just past the closing fence line
};

// Every ``` fenced block, in order. An unterminated fence is ignored.
std::vector<FencedBlock> find_fenced_blocks(std::string_view text);

struct ExtractedProgram {
  dsl::RuleProgram program;
  std::vector<dsl::Diagnostic> warnings;
  FencedBlock block;
  std::string before;     // response text preceding the block
  std::string after;      // response text following the block
  std::string rationale;  // before + after, trimmed
};

// Compiles the LAST fenced block of a response. Throws NoCodeBlock, or the
// lexer/parser/validator error with positions relative to the block.
ExtractedProgram extract_program(std::string_view response);

// Block to echo back in a repair prompt: the last fenced block, or the whole
// response when there is none.
std::string offending_code(std::string_view response);

}  // namespace lumenloop::loop
