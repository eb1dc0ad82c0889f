#include "oracles.hpp"

#include "ipoly/parse.hpp"
#include "ipoly/polycore.hpp"

#include <doctest.h>

#include <random>

using namespace ipoly;

namespace {

IntPoly P(const char* s) { return parse_poly(s); }

}  // namespace

TEST_CASE("eval and derivative") {
  CHECK(eval(P("x^2+x+1"), 7) == 57);
  CHECK(eval(P("3*x^4-2*x+11"), 0) == 11);
  CHECK(eval(P("(x^4-5*x^2+x+4)*(x^3-10*x^2+9*x-1)"), 1) == -1);
  CHECK(derivative(P("x^3-19")) == P("3*x^2"));
  CHECK(derivative(P("x^2+x+1")) == P("2*x+1"));
  CHECK(derivative(P("5")).is_zero());
}

TEST_CASE("zero polynomial has no degree") {
  IntPoly z;
  CHECK_FALSE(z.degree().has_value());
  CHECK_THROWS(z.deg());
  CHECK(P("7").degree() == 0u);
}

TEST_CASE("resultant examples") {
  CHECK(resultant(P("x^2+x+1"), P("2*x+1")) == 3);
  CHECK(resultant(P("x^3-19"), P("3*x^2")) == 9747);
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b) CHECK(resultant(IntPoly{-a, 1}, IntPoly{-b, 1}) == a - b);
  CHECK_THROWS_WITH(resultant(IntPoly{}, P("x")), "resultant undefined for zero polynomial");
}

TEST_CASE("resultant matches the Sylvester determinant") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> deg(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const IntPoly f = oracle::random_poly(rng, deg(rng), 20);
    const IntPoly g = oracle::random_poly(rng, deg(rng), 20);
    INFO(to_string(f), " / ", to_string(g));
    CHECK(resultant(f, g) == oracle::sylvester_resultant(f, g));
  }
}

TEST_CASE("resultant multiplicativity and swap sign") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> deg(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const IntPoly f1 = oracle::random_poly(rng, deg(rng), 9);
    const IntPoly f2 = oracle::random_poly(rng, deg(rng), 9);
    const IntPoly g = oracle::random_poly(rng, deg(rng), 9);
    CHECK(resultant(f1 * f2, g) == resultant(f1, g) * resultant(f2, g));
    const int sign = (f1.deg() * g.deg()) % 2 ? -1 : 1;
    CHECK(resultant(f1, g) == sign * resultant(g, f1));
  }
}

TEST_CASE("delta of known factorizations") {
  const std::vector<IntPoly> ex1{P("x^3-19"), P("x^2+x+1")};
  CHECK(abs(delta_factored(ex1)) == 29241);
  CHECK(29241 == 81 * 361);
  const std::vector<IntPoly> ex2{P("x^2-13"), P("x^2-17"), P("x^2-221")};
  CHECK(abs(delta_factored(ex2)) == Integer(64 * 169 * 289));
  const std::vector<IntPoly> lin{P("x-1")};
  CHECK(delta_factored(lin) == 1);
  const std::vector<IntPoly> repeated{P("(x-1)^2")};
  CHECK_THROWS_WITH(delta_factored(repeated), "input not a valid irreducible factorization");
  const std::vector<IntPoly> shared{P("x-1"), P("x^2-1")};
  CHECK_THROWS_WITH(delta_factored(shared), "input not a valid irreducible factorization");
}

TEST_CASE("squarefree part") {
  const IntPoly s = squarefree_part(P("(x-1)^2*(x+2)"));
  CHECK((s == P("(x-1)*(x+2)") || s == -P("(x-1)*(x+2)")));
  CHECK(squarefree_part(P("x^4-2*x^2+1")) == P("x^2-1"));
  CHECK(squarefree_part(P("x^3-19")) == P("x^3-19"));

  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> deg(1, 3), rep(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    IntPoly p = IntPoly{1};
    for (int f = 0; f < 3; ++f) {
      const IntPoly q = oracle::random_poly(rng, deg(rng), 5);
      for (int e = rep(rng); e > 0; --e) p = p * q;
    }
    const IntPoly s = squarefree_part(p);
    CHECK(pseudo_remainder(p, s).is_zero());
    CHECK(gcd(s, derivative(s)).is_constant());
  }
}

TEST_CASE("gcd_primitive") {
  const IntPoly P1 = P("(x^3-19)*(x^2+x+1)");
  const std::vector<IntPoly> pair{P1, P("x") * P1};
  CHECK(gcd_primitive(pair) == P1);
  const std::vector<IntPoly> same{P("2*x^2+4"), P("2*x^2+4")};
  CHECK(gcd_primitive(same) == P("x^2+2"));
  const std::vector<IntPoly> mono{P("x^2"), P("x^3")};
  CHECK(gcd_primitive(mono) == P("x^2"));
  const std::vector<IntPoly> zeros{IntPoly{}, IntPoly{}};
  CHECK_THROWS(gcd_primitive(zeros));
}

TEST_CASE("distinct degree basis examples") {
  {
    const std::vector<IntPoly> hs{P("x^2"), P("x^2+x")};
    const auto b = distinct_degree_basis(hs);
    REQUIRE(b.basis.size() == 2);
    CHECK(b.basis[0] == P("x"));
    CHECK(b.basis[1] == P("x^2"));
    IntMatrix M(2, 2);
    M(0, 1) = 1;
    M(1, 0) = 1;
    M(1, 1) = 1;
    CHECK(b.M == M);
  }
  {
    const std::vector<IntPoly> hs{P("2*x"), P("3*x")};
    const auto b = distinct_degree_basis(hs);
    REQUIRE(b.basis.size() == 1);
    CHECK(b.basis[0] == P("x"));
    CHECK(b.M(0, 0) == 2);
    CHECK(b.M(1, 0) == 3);
  }
  {
    const std::vector<IntPoly> hs{P("x"), P("x^2+3*x"), P("x^3-x")};
    const auto b = distinct_degree_basis(hs);
    CHECK(b.basis == hs);
    CHECK(b.M == IntMatrix::identity(3));
  }
}

TEST_CASE("distinct degree basis reproduces its inputs") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> count(1, 4), deg(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IntPoly> hs;
    for (int i = count(rng); i > 0; --i) hs.push_back(oracle::random_poly(rng, deg(rng), 6, false));
    const auto b = distinct_degree_basis(hs);
    CHECK(apply_matrix(b.M, b.basis) == hs);
    for (std::size_t j = 0; j < b.basis.size(); ++j) {
      REQUIRE_FALSE(b.basis[j].is_zero());
      if (j > 0) CHECK(b.basis[j - 1].deg() < b.basis[j].deg());
    }
  }
}

TEST_CASE("nice transform examples") {
  {
    const std::vector<IntPoly> fs{P("x"), P("x^2")};
    const auto s = nice_transform(fs, 1, 0);
    CHECK(s.c == 1);
    CHECK(s.T == IntMatrix::identity(2));
    CHECK(s.g == fs);
  }
  {
    const std::vector<IntPoly> fs{P("x"), P("x^2+x")};
    const auto s = nice_transform(fs, 1, 0);
    CHECK(s.c == 1);
    CHECK(s.T(0, 0) == 1);
    CHECK(s.T(0, 1) == 0);
    CHECK(s.T(1, 0) == -1);
    CHECK(s.T(1, 1) == 1);
    CHECK(s.g == std::vector<IntPoly>{P("x"), P("x^2")});
  }
  {
    const std::vector<IntPoly> fs{P("x^2")};
    const auto s = nice_transform(fs, 2, 1);
    CHECK(s.g[0] == s.c * P("(2*x+1)^2"));
    CHECK(s.g[0].lead() == s.c * 4);
  }
  const std::vector<IntPoly> clash{P("x^2"), P("x^2+1")};
  CHECK_THROWS(nice_transform(clash, 1, 0));
}

TEST_CASE("nice transform properties on random systems") {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> count(1, 4), dr(-10, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = count(rng);
    std::vector<std::size_t> degs;
    for (std::size_t e = 1; e <= 6; ++e) degs.push_back(e);
    std::shuffle(degs.begin(), degs.end(), rng);
    degs.resize(k);
    std::sort(degs.begin(), degs.end());
    std::vector<IntPoly> fs;
    for (auto e : degs) {
      IntPoly f = oracle::random_poly(rng, e, 7);
      // Keep f(0) = 0 as in the source setting; the transform does not need it.
      fs.push_back(f - IntPoly::constant(f.coeff(0)));
    }
    int d = 0;
    while (d == 0) d = dr(rng);
    const int r = dr(rng);
    const auto s = nice_transform(fs, d, r);
    INFO("trial ", trial);
    std::vector<IntPoly> shifted;
    for (const auto& f : fs) shifted.push_back(oracle::substitute(f, d, r));
    CHECK(apply_matrix(s.T, shifted) == s.g);
    CHECK(s.c != 0);
    for (std::size_t i = 0; i < s.g.size(); ++i) {
      CHECK(s.T(i, i) == s.c);
      for (std::size_t j = i + 1; j < s.g.size(); ++j) CHECK(s.T(i, j) == 0);
      REQUIRE_FALSE(s.g[i].is_zero());
      CHECK(s.g[i].deg() == fs[i].deg());
      CHECK(s.g[i].lead() == s.c * pow(Integer(d), fs[i].deg()) * fs[i].lead());
    }
    CHECK(is_nice(s.g));
  }
}
