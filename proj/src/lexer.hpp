#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rsmlkit/ast.hpp"
#include "rsmlkit/diagnostic.hpp"

namespace rsmlkit::detail
{

enum class TokenKind {
  ident,
  req_id,
  integer,
  string,
  lbrace,
  rbrace,
  lparen,
  rparen,
  lbracket,
  rbracket,
  colon,
  comma,
  semicolon,
  dot,
  dotdot,
  arrow,  // <->
  relop,
  invalid,
  eof,
};

[[nodiscard]] const char * describe(TokenKind k) noexcept;

struct Token
{
  TokenKind kind = TokenKind::eof;
  std::string text;  // identifier spelling, decoded string body, or raw lexeme
  std::int64_t number = 0;
  RelOp op = RelOp::eq;
  SourceSpan span;
};

/// Splits source into tokens. `--` starts a comment running to end of line.
/// Unknown characters become `invalid` tokens so the parser can report them
/// in order with everything else.
[[nodiscard]] std::vector<Token> tokenize(std::string_view source, const std::string & file);

/// Human-readable rendering of a token for "found ..." messages.
[[nodiscard]] std::string quote(const Token & t);

}  // namespace rsmlkit::detail
