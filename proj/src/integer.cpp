#include "ipoly/integer.hpp"

#include <algorithm>
#include <stdexcept>

namespace ipoly {

std::optional<unsigned> valuation(const Integer& n, const Integer& p) {
  if (n == 0) return std::nullopt;
  if (p < 2) throw std::invalid_argument("valuation base must be >= 2");
  Integer m = abs(n);
  unsigned v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  // Deterministic sequence of polynomial constants; each retry changes c.
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, ys, g = 1, q = 1;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const Integer& v) { return mod(v * v + c, n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        const unsigned long steps = std::min(m, r - k);
        for (unsigned long i = 0; i < steps; ++i) {
          y = f(y);
          q = mod(q * abs(x - y), n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<PrimePower> factorize(const Integer& n) {
  if (n == 0) throw std::invalid_argument("cannot factor zero");
  Integer m = abs(n);
  std::vector<Integer> primes;
  for (unsigned long p = 2; p < 10000 && m > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      primes.emplace_back(p);
      m /= p;
    }
  }
  factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().p == p) {
      ++out.back().e;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (auto& pp : factorize(n)) out.push_back(pp.p);
  return out;
}

Integer crt_pair(const Integer& a1, const Integer& m1, const Integer& a2, const Integer& m2) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0 && m2 != 1) {
    throw std::invalid_argument("crt_pair: moduli not coprime");
  }
  if (m2 == 1) return mod(a1, m1);
  // x = a1 + m1 * ((a2 - a1) * m1^{-1} mod m2)
  const Integer t = mod((a2 - a1) * inv, m2);
  return mod(a1 + m1 * t, m1 * m2);
}

std::string to_string(const Integer& n) { return n.get_str(10); }

Integer parse_integer(const std::string& text) {
  Integer r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return r;
}

bool fits_int64(const Integer& n) { return mpz_fits_slong_p(n.get_mpz_t()) != 0; }

std::int64_t to_int64(const Integer& n) {
  if (!fits_int64(n)) throw std::out_of_range("integer does not fit in 64 bits");
  return n.get_si();
}

std::uint64_t to_uint64(const Integer& n) {
  if (n < 0 || !mpz_fits_ulong_p(n.get_mpz_t())) {
    throw std::out_of_range("integer does not fit in unsigned 64 bits");
  }
  return n.get_ui();
}

Integer from_int64(std::int64_t v) { return Integer(static_cast<long>(v)); }
Integer from_uint64(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

}  // namespace ipoly
