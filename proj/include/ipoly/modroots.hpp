#pragma once

// Roots of integer polynomials modulo primes, prime powers and composite
// moduli, Hensel/Newton lifting, and p-adic root certification.

#include "ipoly/int_poly.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipoly {

/// First kind: a root in Z_p. Second kind: a root in Z_p^x (a unit).
enum class Kind { first, second };

std::string to_string(Kind kind);
Kind parse_kind(const std::string& text);

/// Valuations recorded when v_p(P(r)) > 2 v_p(P'(r)), the regime in which
/// Newton iteration converges to a p-adic root. An absent value valuation
/// means P(r) == 0 exactly.
struct NewtonSlack {
  std::optional<unsigned> v_value;
  unsigned v_derivative = 0;

  friend bool operator==(const NewtonSlack&, const NewtonSlack&) = default;
};

/// A residue r mod p^k with P(r) = 0 (mod p^k) for its owning polynomial.
struct PadicRoot {
  Integer p;
  unsigned k = 1;
  Integer r;
  bool unit = false;
  std::optional<NewtonSlack> slack;

  friend bool operator==(const PadicRoot&, const PadicRoot&) = default;
};

/// Raised when branch lifting runs out of depth before any surviving branch
/// reaches the Newton regime. Distinct from a definite "no root".
class InconclusiveError : public std::runtime_error {
 public:
  explicit InconclusiveError(const Integer& p);
  const Integer& prime() const { return p_; }

 private:
  Integer p_;
};

struct RootOptions {
  /// Below this prime roots mod p are found by scanning all residues.
  unsigned long scan_threshold = 100000;
  /// Seed for the randomized equal-degree splitting used above the threshold.
  std::uint64_t seed = 0;
};

/// Builds a PadicRoot for residue r, computing the unit flag and slack.
/// Throws std::invalid_argument when P(r) is not 0 mod p^k.
PadicRoot make_padic_root(const IntPoly& P, const Integer& p, unsigned k, const Integer& r);

/// Sorted roots of P mod p. If P vanishes identically mod p every residue is
/// returned. Throws std::invalid_argument when p is not prime.
std::vector<Integer> roots_mod_p(const IntPoly& P, const Integer& p, const RootOptions& opts = {});

/// Sorted roots of P mod p^k, lifted one level at a time. With unit_only the
/// search keeps only residues prime to p.
std::vector<Integer> lift_roots(const IntPoly& P, const Integer& p, unsigned k,
                                const RootOptions& opts = {}, bool unit_only = false);

/// Newton lift of a root in the slack regime to precision target >= root.k.
/// For target > root.k the residue is the truncation of the unique p-adic
/// root refining root.r; target == root.k returns root unchanged.
PadicRoot newton_lift(const IntPoly& P, const PadicRoot& root, unsigned target);

/// Sorted roots of P mod q via prime-power lifting and CRT.
std::vector<Integer> roots_mod_q(const IntPoly& P, const Integer& q, bool coprime_only,
                                 const RootOptions& opts = {});

struct CertifyOptions {
  RootOptions roots;
  /// Extra lifting levels past 2*beta+1 allowed for reaching Newton slack;
  /// nullopt means 4*(beta+1).
  std::optional<unsigned> extra_depth;
};

/// Outcome of the p-adic search for one prime.
struct PadicSearch {
  std::optional<PadicRoot> root;
  unsigned beta = 0;       ///< v_p of the effective delta
  unsigned precision = 1;  ///< 2*beta + 1
  /// When no root exists: least j with no qualifying residue mod p^j.
  unsigned empty_level = 0;
};

/// Decides whether the squarefree primitive polynomial P has a root in Z_p
/// (kind first) or Z_p^x (kind second), given its effective delta D =
/// |Res(P, P')|. A qualifying residue mod p^(2 v_p(D) + 1) exists iff such a
/// root exists. The returned root is the smallest truncation of a p-adic root
/// at the first precision where one carries Newton slack.
PadicSearch search_padic_root(const IntPoly& squarefree, const Integer& effective_delta,
                              const Integer& p, Kind kind, const CertifyOptions& opts = {});

/// |Res(P*, P*')| for the squarefree part P* of P.
Integer effective_delta(const IntPoly& P);

/// Certification of a single prime on an arbitrary nonzero polynomial; works
/// on its primitive squarefree part.
std::optional<PadicRoot> certify_padic_root(const IntPoly& P, const Integer& p, Kind kind,
                                            const CertifyOptions& opts = {});

}  // namespace ipoly
