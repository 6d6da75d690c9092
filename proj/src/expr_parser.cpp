#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "expr_functions.hpp"
#include "semilinear/errors.hpp"
#include "semilinear/expr.hpp"

namespace semilinear {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
  double number = 0.0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      // digits [. digits] [e[+-]digits]
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        } else {
          throw ParseError("malformed exponent in number", start);
        }
      }
      Token t{Tok::number, start, s.substr(start, i - start)};
      auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + i, t.number);
      if (ec != std::errc() || ptr != s.data() + i) throw ParseError("malformed number", start);
      out.push_back(t);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back(Token{Tok::ident, start, s.substr(start, i - start)});
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ',': kind = Tok::comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", start);
    }
    out.push_back(Token{kind, start, s.substr(start, 1)});
    ++i;
  }
  out.push_back(Token{Tok::end, s.size(), {}});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : tokens_(tokenize(text)), opts_(opts) {}

  Expr run() {
    if (peek().kind == Tok::end) throw ParseError("empty expression", peek().pos);
    Expr e = expression();
    if (peek().kind != Tok::end) throw ParseError("unexpected '" + std::string(peek().text) + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  Expr expression() {
    Expr lhs = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const Op op = take().kind == Tok::plus ? Op::add : Op::sub;
      lhs = Expr::binary(op, lhs, term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      const Op op = take().kind == Tok::star ? Op::mul : Op::div;
      lhs = Expr::binary(op, lhs, unary());
    }
    return lhs;
  }

  Expr unary() {
    if (peek().kind == Tok::minus) {
      take();
      return Expr::unary(Op::neg, unary());
    }
    if (peek().kind == Tok::plus) {
      take();
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (peek().kind == Tok::caret) {
      take();
      return Expr::binary(Op::pow, base, unary());
    }
    return base;
  }

  Expr primary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::number:
        return Expr::constant(t.number);
      case Tok::lparen: {
        Expr inner = expression();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident:
        if (peek().kind == Tok::lparen) return call(t);
        return identifier(t);
      case Tok::end:
        throw ParseError("unexpected end of expression", t.pos);
      default:
        throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  Expr call(const Token& name) {
    const auto info = detail::lookup_function(name.text);
    if (!info) throw ParseError("unknown function '" + std::string(name.text) + "'", name.pos);
    const Token& open = take();
    std::vector<Expr> args;
    if (peek().kind != Tok::rparen) {
      args.push_back(expression());
      while (peek().kind == Tok::comma) {
        take();
        args.push_back(expression());
      }
    }
    if (peek().kind != Tok::rparen) throw ParseError("expected ',' or ')' in call", peek().pos);
    take();
    if (static_cast<int>(args.size()) != info->arity) {
      throw ParseError(std::string(name.text) + " expects " + std::to_string(info->arity) + " argument" +
                           (info->arity == 1 ? "" : "s") + ", got " + std::to_string(args.size()),
                       open.pos);
    }
    if (info->arity == 1) return Expr::unary(info->op, args[0]);
    return Expr::binary(info->op, args[0], args[1]);
  }

  Expr identifier(const Token& t) {
    if (auto v = detail::lookup_variable(t.text)) {
      if ((v->kind == VarKind::x || v->kind == VarKind::p) && v->index > opts_.dimension) {
        throw ParseError("'" + std::string(t.text) + "' exceeds dimension " + std::to_string(opts_.dimension),
                         t.pos);
      }
      return Expr::variable(*v);
    }
    if (detail::lookup_function(t.text)) {
      throw ParseError("function '" + std::string(t.text) + "' used without arguments", t.pos);
    }
    const auto it = opts_.params.find(std::string(t.text));
    if (it == opts_.params.end()) throw ParseError("unknown identifier '" + std::string(t.text) + "'", t.pos);
    if (!it->second) throw ParseError("parameter '" + std::string(t.text) + "' is unbound", t.pos);
    return Expr::parameter(it->first, *it->second);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      throw ParseError(std::string("expected ") + what, peek().pos);
    }
    take();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
};

}  // namespace

Expr parse(std::string_view text, const ParseOptions& options) {
  for (const auto& [name, value] : options.params) {
    if (detail::lookup_variable(name) || detail::lookup_function(name)) {
      throw ParseError("parameter name '" + name + "' collides with a reserved name", 0);
    }
  }
  return Parser(text, options).run();
}

}  // namespace semilinear
