#pragma once

// Arbitrary-precision integer helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ipoly {

using Integer = mpz_class;

/// Prime-power factor p^e.
struct PrimePower {
  Integer p;
  unsigned e = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// p-adic valuation of n. nullopt stands for +infinity (n == 0).
std::optional<unsigned> valuation(const Integer& n, const Integer& p);

Integer pow(const Integer& base, unsigned long e);

/// Non-negative residue of a modulo m (m > 0).
Integer mod(const Integer& a, const Integer& m);

bool is_prime(const Integer& n);

/// Prime factorization of |n| in increasing order of primes. n must be nonzero.
/// Trial division followed by Pollard-Brent for the cofactor.
std::vector<PrimePower> factorize(const Integer& n);

/// Distinct prime divisors of |n|, increasing.
std::vector<Integer> prime_divisors(const Integer& n);

/// Combine x = a1 (mod m1), x = a2 (mod m2) for coprime moduli; result in [0, m1*m2).
Integer crt_pair(const Integer& a1, const Integer& m1, const Integer& a2, const Integer& m2);

std::string to_string(const Integer& n);
Integer parse_integer(const std::string& text);

/// Fits in a signed 64-bit integer.
bool fits_int64(const Integer& n);
std::int64_t to_int64(const Integer& n);
std::uint64_t to_uint64(const Integer& n);
Integer from_int64(std::int64_t v);
Integer from_uint64(std::uint64_t v);

}  // namespace ipoly
