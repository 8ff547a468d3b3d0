#include "cpn/parser.hpp"

#include <cctype>
#include <string>

namespace cpn {

namespace {

constexpr unsigned long kMaxExponent = 1000;

enum class Tok { Integer, I, Xi, Xibar, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= s_.size()) return t;
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Integer;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) t.text += advance();
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) t.text += advance();
      if (t.text == "i") {
        t.kind = Tok::I;
      } else if (t.text == "xi") {
        t.kind = Tok::Xi;
      } else if (t.text == "xibar") {
        t.kind = Tok::Xibar;
      } else {
        throw ParseError("unknown identifier '" + t.text + "'", t.line, t.column);
      }
      return t;
    }
    t.text = std::string(1, advance());
    switch (c) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '^': t.kind = Tok::Caret; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case ',': t.kind = Tok::Comma; break;
      default: throw ParseError("unexpected character '" + t.text + "'", t.line, t.column);
    }
    return t;
  }

 private:
  char advance() {
    const char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { cur_ = lex_.next(); }

  std::vector<ExactPoly> list() {
    std::vector<ExactPoly> out;
    out.push_back(expr());
    while (cur_.kind == Tok::Comma) {
      shift();
      out.push_back(expr());
    }
    expect_end();
    return out;
  }

  ExactPoly single() {
    ExactPoly p = expr();
    expect_end();
    return p;
  }

 private:
  void shift() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.column); }

  void expect_end() const {
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
  }

  ExactPoly expr() {
    ExactPoly acc = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const bool minus = cur_.kind == Tok::Minus;
      shift();
      ExactPoly rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  ExactPoly term() {
    ExactPoly acc = unary();
    while (cur_.kind == Tok::Star) {
      shift();
      acc = acc * unary();
    }
    return acc;
  }

  ExactPoly unary() {
    if (cur_.kind == Tok::Minus) {
      shift();
      return -unary();
    }
    if (cur_.kind == Tok::Plus) {
      shift();
      return unary();
    }
    return power();
  }

  ExactPoly power() {
    ExactPoly base = primary();
    if (cur_.kind != Tok::Caret) return base;
    shift();
    if (cur_.kind != Tok::Integer) fail("exponent must be a nonnegative integer");
    unsigned long e = 0;
    try {
      e = std::stoul(cur_.text);
    } catch (const std::exception&) {
      fail("exponent out of range");
    }
    if (e > kMaxExponent) fail("exponent out of range");
    shift();
    return base.pow(static_cast<unsigned>(e));
  }

  ExactPoly primary() {
    switch (cur_.kind) {
      case Tok::Integer: {
        mpq_class value(mpz_class(cur_.text));
        shift();
        if (cur_.kind == Tok::Slash) {
          shift();
          if (cur_.kind != Tok::Integer) fail("expected integer denominator after '/'");
          mpz_class den(cur_.text);
          if (den == 0) fail("zero denominator in rational literal");
          value /= mpq_class(den);
          shift();
        }
        return ExactPoly(ExactComplex(value));
      }
      case Tok::I:
        shift();
        return ExactPoly(ExactComplex::i());
      case Tok::Xi:
        shift();
        return ExactPoly::xi();
      case Tok::Xibar:
        shift();
        return ExactPoly::xibar();
      case Tok::LParen: {
        shift();
        ExactPoly inner = expr();
        if (cur_.kind != Tok::RParen) fail("expected ')'");
        shift();
        return inner;
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + cur_.text + "'");
    }
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

ExactPoly parse_polynomial(std::string_view text) { return Parser(text).single(); }

std::vector<ExactPoly> parse_polynomial_list(std::string_view text) { return Parser(text).list(); }

}  // namespace cpn
