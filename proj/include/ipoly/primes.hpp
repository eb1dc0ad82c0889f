#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace ipoly {

/// Residue class r mod d for restricting prime enumeration.
struct Progression {
  std::uint64_t d = 1;
  std::uint64_t r = 0;
};

/// Primes <= n in increasing order, optionally restricted to p = r (mod d).
/// Throws std::invalid_argument when gcd(r mod d, d) != 1.
std::vector<std::uint64_t> sieve_primes(std::uint64_t n,
                                        std::optional<Progression> progression = std::nullopt);

/// Calls visit(p) for every prime p in [lo, hi], in increasing order, using a
/// segmented sieve with segments of roughly 2^18 integers.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit);

/// Deterministic primality for 64-bit integers (Miller-Rabin, fixed bases).
bool is_prime_u64(std::uint64_t n);

}  // namespace ipoly
