#pragma once

// Small recursive-descent reader for polynomial expressions such as
//   "x1^2 - 3/2*x2*y3 + (y1 + 1)^3"
// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*      ('/' only by a constant)
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | name | '(' expr ')'

#include "n32/polynomial.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace n32 {

template <std::size_t N>
class PolynomialParser {
public:
  PolynomialParser(std::string_view text, std::span<const std::string_view, N> names) : text_(text), names_(names) {}

  Polynomial<N> parse()
  {
    auto p = expr();
    skip();
    if (pos_ != text_.size())
      fail("unexpected trailing input");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& why) const
  {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + why);
  }

  void skip()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c)
  {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial<N> expr()
  {
    auto p = term();
    for (;;) {
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        return p;
    }
  }

  Polynomial<N> term()
  {
    auto p = unary();
    for (;;) {
      if (eat('*')) {
        p = p * unary();
      } else if (eat('/')) {
        auto d = unary();
        if (!d.is_constant() || d.is_zero())
          fail("division only by a nonzero constant");
        p = p / d.constant_term();
      } else {
        return p;
      }
    }
  }

  Polynomial<N> unary()
  {
    if (eat('-'))
      return -unary();
    if (eat('+'))
      return unary();
    return power();
  }

  Polynomial<N> power()
  {
    auto base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (start == pos_)
        fail("expected exponent");
      int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (k > 60)
        fail("exponent too large");
      return base.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  Polynomial<N> atom()
  {
    skip();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = expr();
      if (!eat(')'))
        fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      Rational q;
      q.set_str(std::string(text_.substr(start, pos_ - start)), 10);
      return Polynomial<N>(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < N; ++i)
        if (names_[i] == name)
          return Polynomial<N>::variable(i);
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::span<const std::string_view, N> names_;
  std::size_t pos_ = 0;
};

template <std::size_t N>
Polynomial<N> parse_polynomial(std::string_view text, std::span<const std::string_view, N> names)
{
  return PolynomialParser<N>(text, names).parse();
}

} // namespace n32
