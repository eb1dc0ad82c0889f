#pragma once

// Intersectivity verdicts for single polynomials and families, and the
// coherent residue sequence r_d.

#include "ipoly/modroots.hpp"
#include "ipoly/root_cache.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ipoly {

/// Conclusive counterexample: no qualifying residue mod p^level.
struct Failure {
  Integer p;
  unsigned level = 1;
  std::string reason;
  /// For small p^level: every candidate residue x with P(x) mod p^level.
  std::vector<std::pair<Integer, Integer>> evaluations;
};

/// Every ramified prime has a p-adic witness and every other prime <= bound
/// has a root mod p. Primes above the bound are not examined.
struct CertifiedUpTo {
  std::uint64_t bound = 0;
};

struct IntersectivityVerdict {
  Kind kind = Kind::second;
  std::variant<Failure, CertifiedUpTo> status;
  std::map<Integer, PadicRoot> witnesses;
  std::uint64_t scan_bound = 0;
  Integer content_removed = 1;
  /// Polynomial actually certified: primitive squarefree part (with the
  /// factor x removed for the second kind).
  IntPoly examined;
  std::optional<std::string> note;

  bool certified() const { return std::holds_alternative<CertifiedUpTo>(status); }
  const Failure* failure() const { return std::get_if<Failure>(&status); }
};

struct CheckOptions {
  std::uint64_t bound = 10000;
  unsigned jobs = 1;
  CertifyOptions certify;
};

/// Raised for precondition violations (constant input, impossible r_d, ...).
class IntersectiveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Certifies P at every prime dividing its effective delta (and its constant
/// term, for the second kind) and scans the remaining primes up to the bound.
/// Failures are conclusive; certification is heuristic beyond the bound.
/// Propagates InconclusiveError.
IntersectivityVerdict check_intersective(const IntPoly& P, Kind kind, const CheckOptions& opts = {});

/// Joint intersectivity through the gcd of the family.
IntersectivityVerdict check_joint(std::span<const IntPoly> hs, Kind kind,
                                  const CheckOptions& opts = {});

/// Local condition for systems of l linear combinations. For l >= 2 it is
/// equivalent to joint intersectivity of the second kind; for l = 1 that test
/// is only sufficient, which the verdict's note records.
IntersectivityVerdict check_theorem_condition(std::span<const IntPoly> hs, unsigned l,
                                              const CheckOptions& opts = {});

struct RdRecord {
  std::uint64_t d = 1;
  std::int64_t r_d = 0;  ///< in (-d, 0], coprime to d
  std::map<Integer, PadicRoot> roots;  ///< residue mod p^e for each p^e || d
};

/// r_d for the family hs. The canonical p-adic root of each prime is stored in
/// the cache so that r_{dq} = r_d (mod d) across calls and processes.
RdRecord make_rd(std::span<const IntPoly> hs, std::uint64_t d, RootCache& cache,
                 const CertifyOptions& opts = {});

}  // namespace ipoly
