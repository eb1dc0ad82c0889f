#pragma once

// Exact algebra on integer polynomials: resultants, gcds, squarefree parts,
// distinct-degree bases and the nice-system substitution.

#include "ipoly/int_poly.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ipoly {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Integer> entries() const { return entries_; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> entries_;
};

/// y_i = sum_j m(i, j) * ps[j]. Requires m.cols() == ps.size().
std::vector<IntPoly> apply_matrix(const IntMatrix& m, std::span<const IntPoly> ps);

/// Result of the nice-system substitution: T * (f_i(d x + r))_i = (g_i)_i with
/// T lower triangular, diagonal c, and g a nice system.
struct NiceSystem {
  IntMatrix T;
  Integer c;
  std::vector<IntPoly> g;
  Integer d;
  Integer r;
};

/// Raised for inputs outside an operation's contract.
class PolyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Resultant via the subresultant PRS. Throws PolyError for a zero input.
Integer resultant(const IntPoly& f, const IntPoly& g);

/// Primitive gcd of two polynomials with positive leading coefficient.
/// gcd(0, 0) is 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// Product of Res(h, h') over the supplied factors. Each factor must be
/// nonconstant and squarefree, and the factors pairwise coprime. Irreducibility
/// is the caller's claim and is not checked; the value is only the classical
/// delta when it holds.
Integer delta_factored(std::span<const IntPoly> factors);

/// Primitive part of p / gcd(p, p'), positive leading coefficient.
IntPoly squarefree_part(const IntPoly& p);

/// Primitive gcd of all inputs, positive leading coefficient.
IntPoly gcd_primitive(std::span<const IntPoly> ps);

struct DistinctDegreeBasis {
  std::vector<IntPoly> basis;  // strictly increasing degrees
  IntMatrix M;                 // hs = M * basis
};

/// Basis of the Z-module spanned by hs whose members have pairwise distinct
/// degrees, by integer row reduction of the coefficient matrix.
DistinctDegreeBasis distinct_degree_basis(std::span<const IntPoly> hs);

/// Nice-system transform. fs must have strictly increasing degrees and d != 0.
///
/// The eliminating multipliers are polynomials in r with rational coefficients
/// whose denominators only involve the leading coefficients of fs; c is the
/// least positive integer clearing all of them, so it depends on fs alone.
NiceSystem nice_transform(std::span<const IntPoly> fs, const Integer& d, const Integer& r);

/// True when deg g_1 < ... < deg g_k and the coefficient of x^{deg g_i} in
/// g_j vanishes for every i != j.
bool is_nice(std::span<const IntPoly> gs);

}  // namespace ipoly
