#pragma once

// Independent reference implementations used only by the tests. Each one is
// deliberately naive so that it shares no code path with the library.

#include "ipoly/diophantine.hpp"
#include "ipoly/int_poly.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using ipoly::Integer;
using ipoly::IntPoly;

// Determinant of the Sylvester matrix by Bareiss fraction-free elimination.
inline Integer sylvester_resultant(const IntPoly& f, const IntPoly& g) {
  const std::size_t m = f.deg(), n = g.deg();
  const std::size_t size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<Integer>> a(size, std::vector<Integer>(size, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) a[i][i + j] = f.coeff(m - j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) a[n + i][i + j] = g.coeff(n - j);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < size && a[s][k] == 0) ++s;
      if (s == size) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        Integer v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[size - 1][size - 1];
}

inline Integer horner_mod(const IntPoly& P, const Integer& x, const Integer& q) {
  Integer acc = 0;
  for (std::size_t i = P.coeffs().size(); i-- > 0;) {
    acc = acc * x + P.coeff(i);
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), q.get_mpz_t());
  }
  return acc;
}

// All r in [0, q) with P(r) = 0 mod q, optionally with gcd(r, q) = 1.
inline std::vector<Integer> scan_roots(const IntPoly& P, const Integer& q, bool coprime_only) {
  std::vector<Integer> out;
  for (Integer r = 0; r < q; ++r) {
    if (coprime_only) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
      if (g != 1) continue;
    }
    if (horner_mod(P, r, q) == 0) out.push_back(r);
  }
  return out;
}

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// f(d x + r) expanded by repeated multiplication.
inline IntPoly substitute(const IntPoly& f, const Integer& d, const Integer& r) {
  const IntPoly inner{std::vector<Integer>{r, d}};
  IntPoly out;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) out = out * inner + IntPoly::constant(f.coeff(i));
  return out;
}

// ||a * x|| for a double a and an exact integer x, computed with rationals.
inline double frac_norm_exact(double a, const Integer& x) {
  mpq_class v = mpq_class(a) * mpq_class(x);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  mpq_class f = v - mpq_class(fl);
  if (f > mpq_class(1, 2)) f = 1 - f;
  return f.get_d();
}

struct NaiveSearch {
  std::uint64_t p = 0;
  double max_frac = 1;
};

// Double loop over primes and rows, using exact rational arithmetic for every
// product A_ij * h_j(p). The sum over j is accumulated exactly too.
inline NaiveSearch naive_search(const std::vector<IntPoly>& hs, const ipoly::RealMatrix& A,
                                std::uint64_t N, std::optional<ipoly::Progression> prog) {
  NaiveSearch best;
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (!is_prime_trial(p)) continue;
    if (prog && p % prog->d != prog->r) continue;
    double worst = 0;
    for (std::size_t i = 0; i < A.rows; ++i) {
      mpq_class v = 0;
      for (std::size_t j = 0; j < A.cols; ++j) {
        v += mpq_class(A(i, j)) * mpq_class(ipoly::eval(hs[j], Integer(static_cast<unsigned long>(p))));
      }
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      mpq_class f = v - mpq_class(fl);
      if (f > mpq_class(1, 2)) f = 1 - f;
      worst = std::max(worst, f.get_d());
    }
    if (best.p == 0 || worst < best.max_frac) best = {p, worst};
  }
  return best;
}

inline IntPoly random_poly(std::mt19937_64& rng, std::size_t deg, long bound, bool nonzero_lead = true) {
  std::uniform_int_distribution<long> c(-bound, bound);
  std::vector<Integer> v(deg + 1);
  for (auto& x : v) x = c(rng);
  while (nonzero_lead && v.back() == 0) v.back() = c(rng);
  return IntPoly(std::move(v));
}

}  // namespace oracle
