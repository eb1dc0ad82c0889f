#pragma once

#include "ipoly/int_poly.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ipoly {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position);
  /// Zero-based character offset of the error.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Largest exponent accepted after '^'.
inline constexpr unsigned kMaxExponent = 64;

/// Parses integer polynomial expressions in x:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' integer)?
///   primary := integer | 'x' | '(' expr ')'
///
/// Products are expanded exactly. Whitespace is ignored.
IntPoly parse_poly(std::string_view text);

}  // namespace ipoly
