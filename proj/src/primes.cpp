#include "ipoly/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ipoly {

namespace {

std::vector<std::uint64_t> small_primes(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s && witness; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit) {
  lo = std::max<std::uint64_t>(lo, 2);
  if (hi < lo) return;
  const std::vector<std::uint64_t> base = small_primes(isqrt(hi));
  constexpr std::uint64_t kSegment = 1 << 18;
  std::vector<bool> composite;
  for (std::uint64_t start = lo; start <= hi;) {
    const std::uint64_t end = std::min(hi, start + kSegment - 1);
    composite.assign(end - start + 1, false);
    for (std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t m = first; m <= end; m += p) composite[m - start] = true;
    }
    for (std::uint64_t i = 0; i < composite.size(); ++i) {
      if (!composite[i]) visit(start + i);
    }
    if (end == hi) break;
    start = end + 1;
  }
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t n, std::optional<Progression> progression) {
  Progression prog = progression.value_or(Progression{});
  if (prog.d == 0) throw std::invalid_argument("sieve_primes: modulus must be positive");
  prog.r %= prog.d;
  if (std::gcd(prog.r, prog.d) != 1) {
    throw std::invalid_argument("sieve_primes: progression residue not coprime to modulus");
  }
  std::vector<std::uint64_t> out;
  for_each_prime(2, n, [&](std::uint64_t p) {
    if (p % prog.d == prog.r) out.push_back(p);
  });
  return out;
}

}  // namespace ipoly
