#include "lexer.hpp"

#include <cctype>
#include <charconv>

namespace rsmlkit::detail
{
namespace
{

bool is_ident_start(char c) noexcept
{
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) noexcept
{
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

class Lexer
{
public:
  Lexer(std::string_view src, const std::string & file) : src_(src), file_(file) {}

  std::vector<Token> run()
  {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= src_.size()) {
        Token t;
        t.kind = TokenKind::eof;
        t.span = span_here(0);
        out.push_back(std::move(t));
        return out;
      }
      out.push_back(next());
    }
  }

private:
  SourceSpan span_here(int length) const { return {file_, line_, col_, length}; }

  char peek(std::size_t ahead = 0) const noexcept
  {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  // Advances one byte; columns count code points, so UTF-8 continuation
  // bytes do not move the column.
  void bump()
  {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  void bump(std::size_t n)
  {
    for (std::size_t i = 0; i < n; ++i) bump();
  }

  bool starts_with(std::string_view s) const noexcept
  {
    return src_.substr(pos_, s.size()) == s;
  }

  void skip_trivia()
  {
    while (pos_ < src_.size()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '-' && peek(1) == '-') {
        while (pos_ < src_.size() && peek() != '\n') bump();
      } else {
        return;
      }
    }
  }

  Token simple(TokenKind k, std::size_t len)
  {
    Token t;
    t.kind = k;
    t.text = std::string(src_.substr(pos_, len));
    t.span = span_here(1);
    bump(len);
    return t;
  }

  Token relop(RelOp op, std::size_t len)
  {
    Token t = simple(TokenKind::relop, len);
    t.op = op;
    t.span.length = 1;
    return t;
  }

  Token next()
  {
    const char c = peek();
    if (is_ident_start(c)) return ident();
    if (is_digit(c) || (c == '-' && is_digit(peek(1)))) return integer();
    switch (c) {
      case '"':
        return string();
      case '{':
        return simple(TokenKind::lbrace, 1);
      case '}':
        return simple(TokenKind::rbrace, 1);
      case '(':
        return simple(TokenKind::lparen, 1);
      case ')':
        return simple(TokenKind::rparen, 1);
      case '[':
        return simple(TokenKind::lbracket, 1);
      case ']':
        return simple(TokenKind::rbracket, 1);
      case ':':
        return simple(TokenKind::colon, 1);
      case ',':
        return simple(TokenKind::comma, 1);
      case ';':
        return simple(TokenKind::semicolon, 1);
      case '.':
        return peek(1) == '.' ? simple(TokenKind::dotdot, 2) : simple(TokenKind::dot, 1);
      case '=':
        return relop(RelOp::eq, 1);
      case '!':
        if (peek(1) == '=') return relop(RelOp::ne, 2);
        break;
      case '/':
        if (peek(1) == '=') return relop(RelOp::ne, 2);
        break;
      case '<':
        if (starts_with("<->")) return simple(TokenKind::arrow, 3);
        if (peek(1) == '=') return relop(RelOp::le, 2);
        return relop(RelOp::lt, 1);
      case '>':
        if (peek(1) == '=') return relop(RelOp::ge, 2);
        return relop(RelOp::gt, 1);
      default:
        break;
    }
    if (starts_with("≠")) return relop(RelOp::ne, 3);
    if (starts_with("≤")) return relop(RelOp::le, 3);
    if (starts_with("≥")) return relop(RelOp::ge, 3);

    // One code point of garbage.
    std::size_t len = 1;
    while (pos_ + len < src_.size() &&
           (static_cast<unsigned char>(src_[pos_ + len]) & 0xC0) == 0x80) {
      ++len;
    }
    return simple(TokenKind::invalid, len);
  }

  Token ident()
  {
    Token t;
    t.span = span_here(0);
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(peek())) bump();
    t.text = std::string(src_.substr(start, pos_ - start));
    t.kind = TokenKind::ident;
    if (t.text == "REQ" && peek() == '-' && is_ident_char(peek(1))) {
      bump();
      while (pos_ < src_.size() && is_ident_char(peek())) bump();
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = TokenKind::req_id;
    }
    t.span.length = static_cast<int>(t.text.size());
    return t;
  }

  Token integer()
  {
    Token t;
    t.span = span_here(0);
    const std::size_t start = pos_;
    if (peek() == '-') bump();
    while (pos_ < src_.size() && is_digit(peek())) bump();
    t.text = std::string(src_.substr(start, pos_ - start));
    t.span.length = static_cast<int>(t.text.size());
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
    t.kind = (ec == std::errc{} && ptr == t.text.data() + t.text.size()) ? TokenKind::integer
                                                                          : TokenKind::invalid;
    return t;
  }

  Token string()
  {
    Token t;
    t.span = span_here(0);
    bump();  // opening quote
    std::string body;
    for (;;) {
      if (pos_ >= src_.size()) {
        t.kind = TokenKind::invalid;
        t.text = "\"" + body;
        return t;
      }
      const char c = peek();
      if (c == '"') {
        bump();
        break;
      }
      if (c == '\\' && pos_ + 1 < src_.size()) {
        const char e = peek(1);
        body.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
        bump(2);
        continue;
      }
      body.push_back(c);
      bump();
    }
    t.kind = TokenKind::string;
    t.text = std::move(body);
    t.span.length = static_cast<int>(t.text.size() + 2);
    return t;
  }

  std::string_view src_;
  const std::string & file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

const char * describe(TokenKind k) noexcept
{
  switch (k) {
    case TokenKind::ident:
      return "identifier";
    case TokenKind::req_id:
      return "requirement id";
    case TokenKind::integer:
      return "integer";
    case TokenKind::string:
      return "string";
    case TokenKind::lbrace:
      return "'{'";
    case TokenKind::rbrace:
      return "'}'";
    case TokenKind::lparen:
      return "'('";
    case TokenKind::rparen:
      return "')'";
    case TokenKind::lbracket:
      return "'['";
    case TokenKind::rbracket:
      return "']'";
    case TokenKind::colon:
      return "':'";
    case TokenKind::comma:
      return "','";
    case TokenKind::semicolon:
      return "';'";
    case TokenKind::dot:
      return "'.'";
    case TokenKind::dotdot:
      return "'..'";
    case TokenKind::arrow:
      return "'<->'";
    case TokenKind::relop:
      return "relational operator";
    case TokenKind::invalid:
      return "invalid character";
    case TokenKind::eof:
      return "end of file";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view source, const std::string & file)
{
  return Lexer(source, file).run();
}

std::string quote(const Token & t)
{
  switch (t.kind) {
    case TokenKind::eof:
      return "end of file";
    case TokenKind::string:
      return "string \"" + t.text + "\"";
    case TokenKind::invalid:
      return "invalid character '" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

}  // namespace rsmlkit::detail
