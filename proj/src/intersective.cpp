#include "ipoly/intersective.hpp"

#include "ipoly/parallel.hpp"
#include "ipoly/polycore.hpp"
#include "ipoly/primes.hpp"

#include <algorithm>
#include <exception>

namespace ipoly {

namespace {

// Primitive squarefree part; for the second kind the factor x is dropped,
// since its root 0 is never a unit.
IntPoly examined_polynomial(const IntPoly& P, Kind kind) {
  IntPoly W = squarefree_part(P);
  if (kind == Kind::second && !W.is_constant() && W.coeff(0) == 0) {
    W = divide_exact(W, IntPoly::x());
  }
  return W;
}

Failure make_failure(const IntPoly& W, Kind kind, const Integer& p, unsigned level) {
  Failure f{p, level, {}, {}};
  const Integer pl = pow(p, level);
  f.reason = std::string(kind == Kind::second ? "no unit root mod " : "no root mod ") + p.get_str();
  if (level > 1) f.reason += "^" + std::to_string(level);
  if (pl <= 64) {
    for (Integer x = 0; x < pl; ++x) {
      if (kind == Kind::second && mod(x, p) == 0) continue;
      f.evaluations.emplace_back(x, eval_mod(W, x, pl));
    }
  }
  return f;
}

struct PrimeTask {
  Integer p;
  bool ramified = false;
  // results
  std::optional<PadicSearch> search;
  bool scan_ok = false;
  std::exception_ptr error;
};

}  // namespace

IntersectivityVerdict check_intersective(const IntPoly& P, Kind kind, const CheckOptions& opts) {
  if (P.is_zero() || P.is_constant()) {
    throw IntersectiveError("intersectivity check needs a nonconstant polynomial");
  }
  IntersectivityVerdict verdict;
  verdict.kind = kind;
  verdict.scan_bound = opts.bound;
  verdict.content_removed = content(P);
  const IntPoly W = examined_polynomial(primitive_part(P), kind);
  verdict.examined = W;
  if (W.is_constant()) {
    verdict.status = make_failure(W, kind, 2, 1);
    return verdict;
  }

  const Integer D = abs(resultant(W, derivative(W)));
  std::vector<Integer> ramified = prime_divisors(D);
  if (kind == Kind::second) {
    for (auto& p : prime_divisors(W.coeff(0))) ramified.push_back(p);
    std::sort(ramified.begin(), ramified.end());
    ramified.erase(std::unique(ramified.begin(), ramified.end()), ramified.end());
  }

  std::vector<PrimeTask> tasks;
  for (const auto& p : ramified) tasks.push_back({p, true, {}, false, {}});
  for (std::uint64_t p : sieve_primes(opts.bound)) {
    const Integer pz = from_uint64(p);
    if (!std::binary_search(ramified.begin(), ramified.end(), pz)) {
      tasks.push_back({pz, false, {}, false, {}});
    }
  }
  std::sort(tasks.begin(), tasks.end(), [](const auto& a, const auto& b) { return a.p < b.p; });

  detail::parallel_for(tasks.size(), opts.jobs, [&](std::size_t i) {
    PrimeTask& t = tasks[i];
    try {
      if (t.ramified) {
        t.search = search_padic_root(W, D, t.p, kind, opts.certify);
      } else {
        // p does not divide D (nor W(0) for the second kind): any root mod p is
        // simple and lifts, and is a unit automatically.
        t.scan_ok = !roots_mod_p(W, t.p, opts.certify.roots).empty();
      }
    } catch (...) {
      t.error = std::current_exception();
    }
  });

  for (const auto& t : tasks) {
    if (t.error) std::rethrow_exception(t.error);
    if (t.ramified) {
      if (!t.search->root) {
        verdict.status = make_failure(W, kind, t.p, t.search->empty_level);
        verdict.witnesses.clear();
        return verdict;
      }
      // Report the witness at least at the criterion precision 2*beta+1.
      const PadicRoot& root = *t.search->root;
      verdict.witnesses.emplace(
          t.p, root.k >= t.search->precision ? root : newton_lift(W, root, t.search->precision));
    } else if (!t.scan_ok) {
      verdict.status = make_failure(W, kind, t.p, 1);
      verdict.witnesses.clear();
      return verdict;
    }
  }
  verdict.status = CertifiedUpTo{opts.bound};
  return verdict;
}

IntersectivityVerdict check_joint(std::span<const IntPoly> hs, Kind kind, const CheckOptions& opts) {
  if (hs.empty()) throw IntersectiveError("joint check needs at least one polynomial");
  const IntPoly g = gcd_primitive(hs);
  if (g.is_constant()) {
    IntersectivityVerdict v;
    v.kind = kind;
    v.scan_bound = opts.bound;
    v.examined = g;
    v.status = Failure{2, 1, "gcd is constant", {}};
    return v;
  }
  return check_intersective(g, kind, opts);
}

IntersectivityVerdict check_theorem_condition(std::span<const IntPoly> hs, unsigned l,
                                              const CheckOptions& opts) {
  if (l == 0) throw IntersectiveError("l must be a positive integer");
  IntersectivityVerdict v = check_joint(hs, Kind::second, opts);
  v.note = l >= 2 ? "l >= 2: equivalent to joint intersectivity of the second kind"
                  : "l = 1: joint intersectivity of the second kind is sufficient only";
  return v;
}

RdRecord make_rd(std::span<const IntPoly> hs, std::uint64_t d, RootCache& cache,
                 const CertifyOptions& opts) {
  if (d == 0) throw IntersectiveError("d must be a positive integer");
  if (hs.empty()) throw IntersectiveError("r_d needs at least one polynomial");
  const IntPoly g = gcd_primitive(hs);
  if (g.is_constant()) throw IntersectiveError("polynomials have constant gcd; no r_d exists");
  const IntPoly W = examined_polynomial(g, Kind::second);
  if (W.is_constant()) throw IntersectiveError("no second-kind root at prime 2");
  const std::string key = canonical_hash(W);
  const Integer D = abs(resultant(W, derivative(W)));

  RdRecord rec;
  rec.d = d;
  Integer residue = 0;
  Integer modulus = 1;
  for (const auto& [p, e] : factorize(from_uint64(d))) {
    std::optional<PadicRoot> root = cache.lookup(key, p);
    if (!root) {
      const PadicSearch s = search_padic_root(W, D, p, Kind::second, opts);
      if (!s.root) throw IntersectiveError("no second-kind root at prime " + p.get_str());
      root = cache.record(key, *s.root);
    }
    PadicRoot canonical = make_padic_root(W, p, root->k, root->r);
    Integer local;
    if (e <= canonical.k) {
      local = mod(canonical.r, pow(p, e));
    } else {
      const PadicRoot lifted = newton_lift(W, canonical, e);
      cache.record(key, lifted);
      local = lifted.r;
    }
    rec.roots.emplace(p, make_padic_root(W, p, e, local));
    const Integer pe = pow(p, e);
    residue = crt_pair(residue, modulus, local, pe);
    modulus *= pe;
  }
  rec.r_d = residue == 0 ? 0 : to_int64(residue - from_uint64(d));
  return rec;
}

}  // namespace ipoly
