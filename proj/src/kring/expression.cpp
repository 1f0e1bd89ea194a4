#include "motivic/kring/expression.hpp"

#include <cctype>
#include <string>

#include "motivic/error.hpp"

namespace motivic::kring {

namespace {

constexpr std::int64_t kMaxExponent = 4096;

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  MotivicElement parse() {
    MotivicElement x = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return x;
  }

 private:
  MotivicElement expr() {
    MotivicElement x = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        x = x + term();
      } else if (accept('-')) {
        x = x - term();
      } else {
        return x;
      }
    }
  }

  MotivicElement term() {
    MotivicElement x = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        x = x * unary();
      } else if (accept('/')) {
        x = x / unary();
      } else {
        return x;
      }
    }
  }

  MotivicElement unary() {
    skip_ws();
    if (accept('-')) return -unary();
    return power();
  }

  MotivicElement power() {
    MotivicElement base = primary();
    skip_ws();
    if (!accept('^')) return base;
    skip_ws();
    const bool negative = accept('-');
    skip_ws();
    const Integer e = integer();
    if (e > kMaxExponent) fail("exponent too large");
    const auto k = static_cast<std::int64_t>(e);
    MotivicElement r(1);
    for (std::int64_t i = 0; i < k; ++i) r = r * base;
    return negative ? MotivicElement(1) / r : r;
  }

  MotivicElement primary() {
    skip_ws();
    if (accept('(')) {
      MotivicElement x = expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      return x;
    }
    if (accept('L')) return MotivicElement::lefschetz();
    if (accept('[')) {
      skip_ws();
      const Integer a = integer();
      skip_ws();
      if (!accept(']')) fail("expected ']'");
      if (a < 1 || a > kMaxExponent) throw Error(ErrorCode::invalid_degree, "atom degree " + a.str() + " out of range");
      return MotivicElement::atom(static_cast<std::int64_t>(a));
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) return MotivicElement(integer());
    fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of input");
  }

  Integer integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    Integer v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (text_[pos_++] - '0');
    return v;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::parse_error, msg + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MotivicElement parse_ring_expression(std::string_view text) { return ExpressionParser(text).parse(); }

}  // namespace motivic::kring
