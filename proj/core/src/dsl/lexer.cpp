#include "lumenloop/dsl/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace lumenloop::dsl {
namespace {

constexpr std::array<std::string_view, 7> kKeywords{"if", "then", "else", "end", "and", "or", "not"};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Printable rendering of the character at `i`, keeping UTF-8 sequences whole.
std::string describe_char(std::string_view src, std::size_t i) {
  const auto lead = static_cast<unsigned char>(src[i]);
  std::size_t len = 1;
  if (lead >= 0xF0) {
    len = 4;
  } else if (lead >= 0xE0) {
    len = 3;
  } else if (lead >= 0xC0) {
    len = 2;
  }
  if (lead < 0x20 || lead == 0x7F) {
    return "\\x" + std::string(1, "0123456789abcdef"[lead >> 4]) + "0123456789abcdef"[lead & 0xF];
  }
  return std::string(src.substr(i, std::min(len, src.size() - i)));
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::keyword: return "keyword";
    case TokenKind::identifier: return "identifier";
    case TokenKind::number: return "number";
    case TokenKind::comparator: return "comparator";
    case TokenKind::op: return "operator";
    case TokenKind::punctuation: return "punctuation";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  int line = 1;
  int col = 1;
  std::size_t i = 0;

  auto push = [&](TokenKind kind, std::size_t len) {
    tokens.push_back(Token{kind, std::string(src.substr(i, len)), SourcePos{line, col}, 0.0});
    i += len;
    col += static_cast<int>(len);
  };

  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') {
        ++i;
      }
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t len = 1;
      while (i + len < src.size() && is_ident_char(src[i + len])) {
        ++len;
      }
      const std::string_view word = src.substr(i, len);
      bool keyword = false;
      for (auto kw : kKeywords) {
        keyword = keyword || kw == word;
      }
      push(keyword ? TokenKind::keyword : TokenKind::identifier, len);
      continue;
    }
    if (is_digit(c)) {
      std::size_t len = 1;
      while (i + len < src.size() && is_digit(src[i + len])) {
        ++len;
      }
      if (i + len < src.size() && src[i + len] == '.') {
        if (i + len + 1 >= src.size() || !is_digit(src[i + len + 1])) {
          throw LexError(SourcePos{line, col + static_cast<int>(len) + 1}, "expected a digit after '.'");
        }
        len += 1;
        while (i + len < src.size() && is_digit(src[i + len])) {
          ++len;
        }
      }
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(src.data() + i, src.data() + i + len, value);
      if (ec != std::errc{} || ptr != src.data() + i + len) {
        throw LexError(SourcePos{line, col}, "number '" + std::string(src.substr(i, len)) + "' is out of range");
      }
      push(TokenKind::number, len);
      tokens.back().number = value;
      continue;
    }
    const char next = i + 1 < src.size() ? src[i + 1] : '\0';
    switch (c) {
      case '<':
      case '>':
        push(TokenKind::comparator, next == '=' ? 2 : 1);
        continue;
      case '=':
        if (next == '=') {
          push(TokenKind::comparator, 2);
        } else {
          push(TokenKind::op, 1);
        }
        continue;
      case '!':
        if (next == '=') {
          push(TokenKind::comparator, 2);
          continue;
        }
        throw LexError(SourcePos{line, col}, "unexpected character '!' (did you mean '!=' or 'not'?)");
      case '+':
      case '-':
      case '*':
      case '/':
        push(TokenKind::op, 1);
        continue;
      case '(':
      case ')':
      case '.':
        push(TokenKind::punctuation, 1);
        continue;
      default:
        throw LexError(SourcePos{line, col}, "unexpected character '" + describe_char(src, i) + "'");
    }
  }
  return tokens;
}

}  // namespace lumenloop::dsl
