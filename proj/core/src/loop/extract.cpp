#include "lumenloop/loop/extract.hpp"

#include "lumenloop/dsl/parser.hpp"
#include "lumenloop/dsl/validate.hpp"

namespace lumenloop::loop {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

struct Line {
  std::size_t begin;
  std::size_t end;  // past the newline, if any
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::size_t stop = nl == std::string_view::npos ? text.size() : nl;
    const std::size_t next = nl == std::string_view::npos ? text.size() : nl + 1;
    lines.push_back({pos, next, text.substr(pos, stop - pos)});
    pos = next;
  }
  return lines;
}

bool is_fence(std::string_view line) { return trim(line).starts_with("```"); }

}  // namespace

std::vector<FencedBlock> find_fenced_blocks(std::string_view text) {
  std::vector<FencedBlock> blocks;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_fence(lines[i].text)) {
      continue;
    }
    std::size_t close = i + 1;
    while (close < lines.size() && trim(lines[close].text) != "```") {
      ++close;
    }
    if (close == lines.size()) {
      break;
    }
    FencedBlock block;
    block.label = std::string(trim(trim(lines[i].text).substr(3)));
    for (std::size_t k = i + 1; k < close; ++k) {
      std::string_view body = lines[k].text;
      if (!body.empty() && body.back() == '\r') {
        body.remove_suffix(1);
      }
      block.code += body;
      block.code += '\n';
    }
    block.begin = lines[i].begin;
    block.end = lines[close].end;
    blocks.push_back(std::move(block));
    i = close;
  }
  return blocks;
}

ExtractedProgram extract_program(std::string_view response) {
  auto blocks = find_fenced_blocks(response);
  if (blocks.empty()) {
    throw NoCodeBlock("response contains no fenced code block");
  }
  ExtractedProgram out;
  out.block = std::move(blocks.back());
  out.program = dsl::parse_program(out.block.code);
  auto diagnostics = dsl::validate(out.program);
  if (dsl::has_errors(diagnostics)) {
    throw dsl::ProgramError(std::move(diagnostics));
  }
  out.warnings = std::move(diagnostics);
  out.before = std::string(response.substr(0, out.block.begin));
  out.after = std::string(response.substr(out.block.end));
  const auto before = trim(out.before);
  const auto after = trim(out.after);
  out.rationale = std::string(before);
  if (!before.empty() && !after.empty()) {
    out.rationale += "\n\n";
  }
  out.rationale += after;
  return out;
}

std::string offending_code(std::string_view response) {
  const auto blocks = find_fenced_blocks(response);
  if (blocks.empty()) {
    return std::string(response);
  }
  return blocks.back().code;
}

}  // namespace lumenloop::loop
