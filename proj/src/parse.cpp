#include "ipoly/parse.hpp"

#include <cctype>

namespace ipoly {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  IntPoly parse() {
    skip();
    if (at_end()) throw ParseError("empty expression", pos_);
    IntPoly p = expr();
    skip();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  IntPoly expr() {
    IntPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  IntPoly term() {
    IntPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  IntPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  IntPoly power() {
    IntPoly base = primary();
    if (!accept('^')) return base;
    skip();
    const std::size_t start = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("exponent must be a nonnegative integer", start);
    }
    const Integer e = digits();
    if (e > kMaxExponent) {
      throw ParseError("exponent exceeds " + std::to_string(kMaxExponent), start);
    }
    IntPoly out{1};
    for (unsigned long i = 0; i < e.get_ui(); ++i) out = out * base;
    return out;
  }

  IntPoly primary() {
    skip();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return IntPoly::constant(digits());
    if (c == 'x') {
      ++pos_;
      return IntPoly::x();
    }
    if (c == '(') {
      ++pos_;
      IntPoly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Integer digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (!at_end() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      throw ParseError("non-integer literal", start);
    }
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

}  // namespace ipoly
