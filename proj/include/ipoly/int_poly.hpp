#pragma once

#include "ipoly/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ipoly {

/// Exact univariate polynomial over Z. Coefficient i multiplies x^i and the
/// stored sequence never ends in a zero, so equality is coefficient equality.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const Integer& c);
  static IntPoly monomial(const Integer& c, std::size_t e);
  static IntPoly x() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Degree; nullopt is the "minus infinity" degree of the zero polynomial.
  std::optional<std::size_t> degree() const;
  /// Degree of a nonzero polynomial; throws for zero.
  std::size_t deg() const;
  /// Leading coefficient; throws for zero.
  const Integer& lead() const;
  /// Coefficient of x^i (zero beyond the degree).
  const Integer& coeff(std::size_t i) const;
  std::span<const Integer> coeffs() const { return coeffs_; }

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const Integer& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const Integer& c) { return a *= c; }
  friend IntPoly operator*(const Integer& c, IntPoly a) { return a *= c; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(IntPoly a);

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Horner evaluation, exact.
Integer eval(const IntPoly& p, const Integer& x);
/// Evaluation reduced into [0, m).
Integer eval_mod(const IntPoly& p, const Integer& x, const Integer& m);

IntPoly derivative(const IntPoly& p);

/// Non-negative gcd of the coefficients (0 for the zero polynomial).
Integer content(const IntPoly& p);
/// p / content(p), with the sign of the leading coefficient kept.
IntPoly primitive_part(const IntPoly& p);

/// p(d*x + r).
IntPoly compose_affine(const IntPoly& p, const Integer& d, const Integer& r);

/// Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// a / b when b divides a exactly in Z[x]; throws otherwise.
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);
/// Every coefficient divided exactly by c.
IntPoly divide_exact(const IntPoly& a, const Integer& c);

/// Canonical text: "x^5+x^4-19*x-19", "0" for zero.
std::string to_string(const IntPoly& p);

/// Stable 64-bit FNV-1a hash of the canonical text, rendered as 16 hex digits.
std::string canonical_hash(const IntPoly& p);

}  // namespace ipoly
