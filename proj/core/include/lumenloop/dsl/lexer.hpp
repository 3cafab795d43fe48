#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lumenloop/dsl/diagnostic.hpp"

namespace lumenloop::dsl {

enum class TokenKind { keyword, identifier, number, comparator, op, punctuation };

struct Token {
  TokenKind kind = TokenKind::identifier;
  std::string lexeme;
  SourcePos pos;
  double number = 0.0;  // set for TokenKind::number

  bool operator==(const Token&) const = default;
};

std::string_view to_string(TokenKind kind);

// Splits rule source into tokens. '#' starts a comment running to end of line.
// Throws LexError at the first character that cannot start a token.
std::vector<Token> tokenize(std::string_view source);

}  // namespace lumenloop::dsl
