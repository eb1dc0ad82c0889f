#include "ipoly/modroots.hpp"

#include "ipoly/polycore.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace ipoly {

std::string to_string(Kind kind) { return kind == Kind::first ? "first" : "second"; }

Kind parse_kind(const std::string& text) {
  if (text == "first") return Kind::first;
  if (text == "second") return Kind::second;
  throw std::invalid_argument("kind must be 'first' or 'second', got '" + text + "'");
}

InconclusiveError::InconclusiveError(const Integer& p)
    : std::runtime_error("certification inconclusive at " + p.get_str()), p_(p) {}

PadicRoot make_padic_root(const IntPoly& P, const Integer& p, unsigned k, const Integer& r) {
  const Integer pk = pow(p, k);
  const Integer res = mod(r, pk);
  const Integer value = eval(P, res);
  if (!mpz_divisible_p(value.get_mpz_t(), pk.get_mpz_t())) {
    throw std::invalid_argument("residue " + res.get_str() + " is not a root mod " + pk.get_str());
  }
  PadicRoot root{p, k, res, mod(res, p) != 0, std::nullopt};
  const auto v_value = valuation(value, p);
  const auto v_derivative = valuation(eval(derivative(P), res), p);
  if (v_derivative && (!v_value || *v_value > 2 * *v_derivative)) {
    root.slack = NewtonSlack{v_value, *v_derivative};
  }
  return root;
}

namespace {

// ---- Polynomials over F_p, coefficients in [0, p), low degree first. ----

using FpPoly = std::vector<Integer>;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly reduce(const IntPoly& P, const Integer& p) {
  FpPoly out;
  for (const auto& c : P.coeffs()) out.push_back(mod(c, p));
  trim(out);
  return out;
}

Integer inverse(const Integer& a, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("element not invertible");
  }
  return inv;
}

FpPoly make_monic(FpPoly a, const Integer& p) {
  if (a.empty()) return a;
  const Integer inv = inverse(a.back(), p);
  for (auto& c : a) c = mod(c * inv, p);
  return a;
}

// Remainder modulo a monic f.
FpPoly rem_monic(FpPoly a, const FpPoly& f, const Integer& p) {
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const Integer top = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) a[shift + i] = mod(a[shift + i] - top * f[i], p);
    trim(a);
  }
  return a;
}

FpPoly div_monic(FpPoly a, const FpPoly& f, const Integer& p) {
  const std::size_t df = f.size() - 1;
  if (a.size() <= df) return {};
  FpPoly q(a.size() - df);
  for (std::size_t s = q.size(); s-- > 0;) {
    const Integer top = a[s + df];
    q[s] = top;
    for (std::size_t i = 0; i <= df; ++i) a[s + i] = mod(a[s + i] - top * f[i], p);
  }
  trim(q);
  return q;
}

FpPoly mul_mod(const FpPoly& a, const FpPoly& b, const FpPoly& f, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  for (auto& c : out) c = mod(c, p);
  trim(out);
  return rem_monic(std::move(out), f, p);
}

FpPoly pow_mod(FpPoly base, Integer e, const FpPoly& f, const Integer& p) {
  FpPoly result{1};
  result = rem_monic(result, f, p);
  base = rem_monic(std::move(base), f, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mul_mod(result, base, f, p);
    e >>= 1;
    if (e > 0) base = mul_mod(base, base, f, p);
  }
  return result;
}

FpPoly gcd_fp(FpPoly a, FpPoly b, const Integer& p) {
  while (!b.empty()) {
    b = make_monic(std::move(b), p);
    FpPoly r = rem_monic(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), p);
}

Integer random_residue(std::mt19937_64& rng, const Integer& p) {
  Integer v = 0;
  for (int i = 0; i < 4; ++i) {
    v <<= 64;
    v += Integer(static_cast<unsigned long>(rng()));
  }
  return mod(v, p);
}

// g monic and a product of distinct linear factors over F_p, p odd.
void split_linear(const FpPoly& g, const Integer& p, std::mt19937_64& rng,
                  std::vector<Integer>& out) {
  const std::size_t deg = g.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(mod(-g[0], p));
    return;
  }
  const Integer half = (p - 1) / 2;
  for (;;) {
    FpPoly shifted{random_residue(rng, p), 1};
    FpPoly h = pow_mod(std::move(shifted), half, g, p);
    if (h.empty()) h.push_back(0);
    h[0] = mod(h[0] - 1, p);
    trim(h);
    FpPoly d = gcd_fp(g, h, p);
    const std::size_t dd = d.size() - 1;
    if (dd > 0 && dd < deg) {
      split_linear(d, p, rng, out);
      split_linear(div_monic(g, d, p), p, rng, out);
      return;
    }
  }
}

std::vector<Integer> scan_roots(const FpPoly& f, unsigned long p) {
  std::vector<unsigned long> c;
  for (const auto& x : f) c.push_back(x.get_ui());
  std::vector<Integer> out;
  for (unsigned long x = 0; x < p; ++x) {
    unsigned long acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
    if (acc == 0) out.emplace_back(x);
  }
  return out;
}

}  // namespace

std::vector<Integer> roots_mod_p(const IntPoly& P, const Integer& p, const RootOptions& opts) {
  if (!is_prime(p)) throw std::invalid_argument("roots_mod_p: " + p.get_str() + " is not prime");
  FpPoly f = reduce(P, p);
  const bool small = p == 2 || p < opts.scan_threshold;
  if (f.empty()) {
    if (!small) throw std::invalid_argument("polynomial vanishes identically modulo a large prime");
    std::vector<Integer> all;
    for (unsigned long x = 0; x < p.get_ui(); ++x) all.emplace_back(x);
    return all;
  }
  if (small) return scan_roots(f, p.get_ui());

  f = make_monic(std::move(f), p);
  std::vector<Integer> out;
  if (f.size() == 1) return out;
  // gcd(f, x^p - x) collects the distinct linear factors.
  FpPoly xp = pow_mod(FpPoly{0, 1}, p, f, p);
  if (xp.size() < 2) xp.resize(2);
  xp[1] = mod(xp[1] - 1, p);
  trim(xp);
  const FpPoly g = gcd_fp(f, xp, p);
  std::mt19937_64 rng(opts.seed);
  split_linear(g, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Integer> lift_roots(const IntPoly& P, const Integer& p, unsigned k,
                                const RootOptions& opts, bool unit_only) {
  if (k == 0) throw std::invalid_argument("lift_roots: precision must be >= 1");
  if (P.is_zero()) throw std::invalid_argument("lift_roots: zero polynomial");
  std::vector<Integer> level = roots_mod_p(P, p, opts);
  if (unit_only) std::erase_if(level, [](const Integer& r) { return r == 0; });
  const IntPoly dP = derivative(P);
  Integer pj = p;
  for (unsigned j = 1; j < k && !level.empty(); ++j) {
    // P(r + t p^j) = P(r) + t p^j P'(r)  (mod p^{j+1}) for j >= 1.
    std::vector<Integer> next;
    for (const auto& r : level) {
      const Integer value = eval(P, r);
      Integer a;
      mpz_divexact(a.get_mpz_t(), value.get_mpz_t(), pj.get_mpz_t());
      a = mod(a, p);
      const Integer b = eval_mod(dP, r, p);
      if (b != 0) {
        next.push_back(r + pj * mod(-a * inverse(b, p), p));
      } else if (a == 0) {
        for (Integer t = 0; t < p; ++t) next.push_back(r + pj * t);
      }
    }
    level = std::move(next);
    pj *= p;
  }
  std::sort(level.begin(), level.end());
  return level;
}

namespace {

// Newton iteration from x (v_p(P(x)) > 2 v_p(P'(x))) to the truncation mod
// p^target of the unique p-adic root refining x.
Integer refine(const IntPoly& P, const Integer& p, const Integer& x, unsigned target) {
  const IntPoly dP = derivative(P);
  const auto v0 = valuation(eval(dP, x), p);
  if (!v0) throw std::invalid_argument("root not in Newton regime");
  const unsigned v = *v0;
  const Integer modulus = pow(p, target + v + 1);
  const Integer pv = pow(p, v);
  Integer a = x;
  for (;;) {
    const Integer value = eval(P, a);
    if (value == 0) break;
    if (*valuation(value, p) >= target + v) break;
    const Integer slope = eval(dP, a);
    Integer unit_part;
    mpz_divexact(unit_part.get_mpz_t(), slope.get_mpz_t(), pv.get_mpz_t());
    Integer scaled;
    mpz_divexact(scaled.get_mpz_t(), value.get_mpz_t(), pv.get_mpz_t());
    a = mod(a - scaled * inverse(mod(unit_part, modulus), modulus), modulus);
  }
  return mod(a, pow(p, target));
}

struct RootClass {
  Integer r;   // class representative in [0, p^j)
  unsigned j;  // all x = r (mod p^j) are roots mod p^L
};

struct Cover {
  std::vector<RootClass> classes;
  unsigned max_level = 0;  // largest m with some qualifying residue mod p^m
};

// Classes of roots of P mod p^L via Taylor shifts x = r + p^j t.
void cover_from(const IntPoly& P, const Integer& p, unsigned L, bool unit_only,
                const RootOptions& opts, const Integer& r, unsigned j, const Integer& pj,
                Cover& out) {
  const IntPoly Q = compose_affine(P, pj, r);
  const unsigned v = *valuation(content(Q), p);
  if (v >= L && !(j == 0 && unit_only)) {
    out.classes.push_back({r, j});
    out.max_level = std::max(out.max_level, L);
    return;
  }
  out.max_level = std::max(out.max_level, v);
  const IntPoly Q1 = divide_exact(Q, pow(p, v));
  for (const auto& t0 : roots_mod_p(Q1, p, opts)) {
    if (j == 0 && unit_only && t0 == 0) continue;
    cover_from(P, p, L, unit_only, opts, r + pj * t0, j + 1, pj * p, out);
  }
}

Cover cover(const IntPoly& P, const Integer& p, unsigned L, bool unit_only,
            const RootOptions& opts) {
  Cover out;
  cover_from(P, p, L, unit_only, opts, 0, 0, 1, out);
  return out;
}

}  // namespace

PadicRoot newton_lift(const IntPoly& P, const PadicRoot& root, unsigned target) {
  if (!root.slack) throw std::invalid_argument("root not in Newton regime");
  if (target < root.k) throw std::invalid_argument("newton_lift: target below current precision");
  if (target == root.k) return root;
  return make_padic_root(P, root.p, target, refine(P, root.p, root.r, target));
}

std::vector<Integer> roots_mod_q(const IntPoly& P, const Integer& q, bool coprime_only,
                                 const RootOptions& opts) {
  if (q <= 0) throw std::invalid_argument("roots_mod_q: modulus must be positive");
  std::vector<Integer> acc{0};
  Integer modulus = 1;
  if (q == 1) return acc;
  for (const auto& [p, e] : factorize(q)) {
    const auto local = lift_roots(P, p, e, opts, coprime_only);
    const Integer pe = pow(p, e);
    std::vector<Integer> next;
    next.reserve(acc.size() * local.size());
    for (const auto& a : acc) {
      for (const auto& b : local) next.push_back(crt_pair(a, modulus, b, pe));
    }
    acc = std::move(next);
    modulus *= pe;
    if (acc.empty()) break;
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

Integer effective_delta(const IntPoly& P) {
  if (P.is_zero() || P.is_constant()) {
    throw std::invalid_argument("effective delta needs a nonconstant polynomial");
  }
  const IntPoly W = squarefree_part(P);
  return abs(resultant(W, derivative(W)));
}

PadicSearch search_padic_root(const IntPoly& W, const Integer& D, const Integer& p, Kind kind,
                              const CertifyOptions& opts) {
  if (!is_prime(p)) throw std::invalid_argument("search_padic_root: " + p.get_str() + " is not prime");
  if (D == 0) throw std::invalid_argument("search_padic_root: polynomial is not squarefree");
  PadicSearch out;
  out.beta = *valuation(D, p);
  out.precision = 2 * out.beta + 1;
  const bool unit_only = kind == Kind::second;
  const unsigned extra = opts.extra_depth.value_or(4 * (out.beta + 1));

  for (unsigned L = out.precision; L <= out.precision + extra; ++L) {
    const Cover c = cover(W, p, L, unit_only, opts.roots);
    if (c.classes.empty()) {
      // Past the decisive precision roots persist, so this only fires at L = 2 beta + 1.
      out.empty_level = c.max_level + 1;
      return out;
    }
    std::optional<Integer> best;
    for (const auto& cls : c.classes) {
      const PadicRoot at = make_padic_root(W, p, L, cls.r);
      if (!at.slack) continue;
      const Integer theta = refine(W, p, cls.r, L);
      if (!make_padic_root(W, p, L, theta).slack) continue;
      if (!best || theta < *best) best = theta;
    }
    if (best) {
      out.root = make_padic_root(W, p, L, *best);
      return out;
    }
  }
  throw InconclusiveError(p);
}

std::optional<PadicRoot> certify_padic_root(const IntPoly& P, const Integer& p, Kind kind,
                                            const CertifyOptions& opts) {
  if (P.is_zero()) throw std::invalid_argument("certify_padic_root: zero polynomial");
  if (!is_prime(p)) throw std::invalid_argument("certify_padic_root: " + p.get_str() + " is not prime");
  const IntPoly W = squarefree_part(P);
  if (W.is_constant()) return std::nullopt;
  return search_padic_root(W, abs(resultant(W, derivative(W))), p, kind, opts).root;
}

}  // namespace ipoly
