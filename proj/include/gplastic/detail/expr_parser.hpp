#pragma once

// Recursive-descent parser shared by the FieldElem and Polynomial grammars.
//
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := unary { ('*'|'/') unary }
//   unary   := '-' unary | power
//   power   := primary [ '^' integer ]
//   primary := integer | identifier | '(' expr ')'
//
// The Policy supplies the value type and resolves identifiers and division:
//   using Value = ...;
//   Value integer(const std::string& digits) const;
//   Value identifier(std::string_view name, std::size_t column) const;
//   Value divide(const Value& a, const Value& b, std::size_t column) const;
//   Value power(const Value& a, unsigned exponent) const;

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "gplastic/error.hpp"

namespace gplastic::detail {

template <class Policy>
class ExprParser {
 public:
  using Value = typename Policy::Value;

  ExprParser(std::string_view text, const Policy& policy) : text_(text), policy_(policy) {}

  Value parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Value acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t col = pos_;
        Value rhs = unary();
        acc = policy_.divide(acc, rhs, col);
      } else {
        return acc;
      }
    }
  }

  Value unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Value power() {
    Value base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected non-negative integer exponent");
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4) fail("exponent too large");
      return policy_.power(base, static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Value primary() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return policy_.integer(std::string(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return policy_.identifier(text_.substr(start, pos_ - start), start + 1);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const Policy& policy_;
  std::size_t pos_ = 0;
};

}  // namespace gplastic::detail
