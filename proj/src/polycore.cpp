#include "ipoly/polycore.hpp"

#include <algorithm>
#include <utility>

namespace ipoly {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<IntPoly> apply_matrix(const IntMatrix& m, std::span<const IntPoly> ps) {
  if (m.cols() != ps.size()) throw PolyError("matrix/vector dimension mismatch");
  std::vector<IntPoly> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) out[i] += m(i, j) * ps[j];
    }
  }
  return out;
}

Integer resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw PolyError("resultant undefined for zero polynomial");
  if (g.deg() == 0) return pow(g.lead(), f.deg());
  if (f.deg() == 0) return pow(f.lead(), g.deg());

  const Integer a = content(f);
  const Integer b = content(g);
  IntPoly A = divide_exact(f, a);
  IntPoly B = divide_exact(g, b);
  const Integer t = pow(a, g.deg()) * pow(b, f.deg());
  Integer gg = 1;
  Integer h = 1;
  int s = 1;
  if (A.deg() < B.deg()) {
    std::swap(A, B);
    if (A.deg() % 2 == 1 && B.deg() % 2 == 1) s = -s;
  }
  for (;;) {
    const std::size_t delta = A.deg() - B.deg();
    if (A.deg() % 2 == 1 && B.deg() % 2 == 1) s = -s;
    IntPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    if (R.is_zero()) return 0;
    B = divide_exact(R, gg * pow(h, delta));
    gg = A.lead();
    if (delta > 0) {
      Integer num = pow(gg, delta);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), Integer(pow(h, delta - 1)).get_mpz_t());
    }
    if (B.deg() == 0) break;
  }
  // h <- lead(B)^{deg A} / h^{deg A - 1}
  Integer num = pow(B.lead(), A.deg());
  Integer den = pow(h, A.deg() - 1);
  Integer hn;
  mpz_divexact(hn.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return s * t * hn;
}

namespace {

IntPoly normalized(IntPoly p) {
  if (p.is_zero()) return p;
  p = primitive_part(p);
  if (p.lead() < 0) p = -p;
  return p;
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  IntPoly A = primitive_part(a);
  IntPoly B = primitive_part(b);
  if (A.deg() < B.deg()) std::swap(A, B);
  while (!B.is_zero()) {
    IntPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    B = primitive_part(R);
  }
  return normalized(A);
}

Integer delta_factored(std::span<const IntPoly> factors) {
  const char* kInvalid = "input not a valid irreducible factorization";
  for (const auto& h : factors) {
    if (h.is_zero() || h.is_constant()) throw PolyError(kInvalid);
    if (!gcd(h, derivative(h)).is_constant()) throw PolyError(kInvalid);
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      if (!gcd(factors[i], factors[j]).is_constant()) throw PolyError(kInvalid);
    }
  }
  Integer delta = 1;
  for (const auto& h : factors) delta *= resultant(h, derivative(h));
  return delta;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_zero()) throw PolyError("squarefree part of the zero polynomial");
  if (p.is_constant()) return IntPoly{1};
  const IntPoly P = primitive_part(p);
  return normalized(divide_exact(P, gcd(P, derivative(P))));
}

IntPoly gcd_primitive(std::span<const IntPoly> ps) {
  IntPoly g;
  for (const auto& p : ps) g = gcd(g, p);
  if (g.is_zero()) throw PolyError("gcd of zero polynomials");
  return g;
}

DistinctDegreeBasis distinct_degree_basis(std::span<const IntPoly> hs) {
  const std::size_t k = hs.size();
  std::size_t width = 0;
  for (const auto& h : hs) width = std::max(width, h.coeffs().size());
  if (k == 0 || width == 0) throw PolyError("distinct_degree_basis needs a nonzero input");

  std::vector<std::vector<Integer>> rows(k, std::vector<Integer>(width));
  for (std::size_t i = 0; i < k; ++i) {
    const auto c = hs[i].coeffs();
    std::copy(c.begin(), c.end(), rows[i].begin());
  }
  // Invariant: hs = V * rows.
  IntMatrix V = IntMatrix::identity(k);
  std::vector<bool> active(k, true);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)

  for (std::size_t col = width; col-- > 0;) {
    for (;;) {
      std::vector<std::size_t> live;
      for (std::size_t i = 0; i < k; ++i) {
        if (active[i] && rows[i][col] != 0) live.push_back(i);
      }
      if (live.empty()) break;
      if (live.size() == 1) {
        pivots.emplace_back(col, live.front());
        active[live.front()] = false;
        break;
      }
      const std::size_t piv = *std::min_element(live.begin(), live.end(), [&](auto x, auto y) {
        return abs(rows[x][col]) < abs(rows[y][col]);
      });
      for (std::size_t i : live) {
        if (i == piv) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[piv][col].get_mpz_t());
        if (q == 0) continue;
        for (std::size_t c = 0; c < width; ++c) rows[i][c] -= q * rows[piv][c];
        for (std::size_t r = 0; r < k; ++r) V(r, piv) += q * V(r, i);
      }
    }
  }

  std::sort(pivots.begin(), pivots.end());
  DistinctDegreeBasis out{{}, IntMatrix(k, pivots.size())};
  for (std::size_t j = 0; j < pivots.size(); ++j) {
    const std::size_t row = pivots[j].second;
    out.basis.emplace_back(rows[row]);
    for (std::size_t i = 0; i < k; ++i) out.M(i, j) = V(i, row);
  }
  return out;
}

namespace {

// Polynomials in the substitution parameter r with rational coefficients.
using RatPoly = std::vector<mpq_class>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const IntPoly& p) {
  RatPoly out;
  for (const auto& c : p.coeffs()) out.emplace_back(c);
  return out;
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

void sub_in_place(RatPoly& a, const RatPoly& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
}

mpq_class eval(const RatPoly& p, const Integer& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// Coefficient of x^e in f(d x + r), divided by d^e, as a polynomial in r:
// sum_{m >= e} a_m * C(m, e) * r^{m - e}.
IntPoly shifted_coefficient(const IntPoly& f, std::size_t e) {
  const auto a = f.coeffs();
  if (a.size() <= e) return {};
  std::vector<Integer> out(a.size() - e);
  for (std::size_t m = e; m < a.size(); ++m) {
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), m, e);
    out[m - e] = a[m] * binom;
  }
  return IntPoly(std::move(out));
}

}  // namespace

bool is_nice(std::span<const IntPoly> gs) {
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (gs[i].is_zero()) return false;
    if (i > 0 && gs[i - 1].deg() >= gs[i].deg()) return false;
  }
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (i != j && gs[j].coeff(gs[i].deg()) != 0) return false;
    }
  }
  return true;
}

NiceSystem nice_transform(std::span<const IntPoly> fs, const Integer& d, const Integer& r) {
  const std::size_t k = fs.size();
  if (k == 0) throw PolyError("nice_transform needs at least one polynomial");
  for (std::size_t i = 0; i < k; ++i) {
    if (fs[i].is_zero()) throw PolyError("nice_transform: zero polynomial");
    if (i > 0 && fs[i - 1].deg() >= fs[i].deg()) {
      throw PolyError("nice_transform: degree collision, degrees must strictly increase");
    }
  }
  if (d == 0) throw PolyError("nice_transform: d must be nonzero");

  // B[j][l] = coefficient of x^{deg f_l} in f_j(d x + r) / d^{deg f_l}.
  std::vector<std::vector<RatPoly>> B(k, std::vector<RatPoly>(k));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l <= j; ++l) B[j][l] = to_rat(shifted_coefficient(fs[j], fs[l].deg()));
  }

  // g_i = c * (F_i - sum_{l < i} t[i][l] F_l); solve the triangular system.
  std::vector<std::vector<RatPoly>> t(k, std::vector<RatPoly>(k));
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t l = i; l-- > 0;) {
      RatPoly num = B[i][l];
      for (std::size_t j = l + 1; j < i; ++j) sub_in_place(num, mul(t[i][j], B[j][l]));
      const mpq_class lead(fs[l].lead());
      for (auto& c : num) c /= lead;
      t[i][l] = std::move(num);
    }
  }

  Integer c = 1;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t l = 0; l < i; ++l) {
      for (const auto& q : t[i][l]) c = lcm(c, Integer(q.get_den()));
    }
  }

  IntMatrix T(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    T(i, i) = c;
    for (std::size_t l = 0; l < i; ++l) {
      const mpq_class v = -eval(t[i][l], r) * c;
      if (v.get_den() != 1) throw PolyError("nice_transform: non-integral multiplier");
      T(i, l) = v.get_num();
    }
  }

  std::vector<IntPoly> F;
  F.reserve(k);
  for (const auto& f : fs) F.push_back(compose_affine(f, d, r));
  return NiceSystem{T, c, apply_matrix(T, F), d, r};
}

}  // namespace ipoly
