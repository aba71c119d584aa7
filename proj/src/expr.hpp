#pragma once

// Small recursive-descent reader for element literals. The grammar is the
// usual arithmetic one over integers and single-letter variables:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | variable | '(' expr ')'
// The builder supplies the arithmetic.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "qbic/errors.hpp"

namespace qbic::detail {

template <class Builder>
class ExprReader {
 public:
  using Value = typename Builder::Value;

  ExprReader(const Builder& b, std::string_view text) : b_(b), s_(text) {}

  Value read() {
    skip();
    if (pos_ == s_.size()) fail("empty element literal");
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::uint64_t integer() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (UINT64_MAX - 9) / 10) fail("integer too large");
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }
  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+'))
        v = b_.add(v, term());
      else if (eat('-'))
        v = b_.sub(v, term());
      else
        return v;
    }
  }
  Value term() {
    Value v = unary();
    for (;;) {
      if (eat('*')) {
        v = b_.mul(v, unary());
      } else if (eat('/')) {
        Value d = unary();
        if (b_.is_zero(d)) fail("division by zero");
        v = b_.div(v, d);
      } else {
        return v;
      }
    }
  }
  Value unary() {
    if (eat('-')) return b_.neg(unary());
    return power();
  }
  Value power() {
    Value v = atom();
    if (eat('^')) v = b_.pow(v, integer());
    return v;
  }
  Value atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return b_.constant(integer());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) fail("unknown token");
      auto v = b_.variable(c);
      if (!v) fail(std::string("unknown variable '") + c + "'");
      return *v;
    }
    fail("unexpected character");
  }

  const Builder& b_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace qbic::detail
