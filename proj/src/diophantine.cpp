#include "ipoly/diophantine.hpp"

#include "ipoly/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace ipoly {

namespace {

using u128 = unsigned __int128;

// alpha = mant / 2^shift exactly, with mant odd whenever shift > 0.
struct Dyadic {
  Integer mant;
  unsigned shift = 0;
};

Dyadic to_dyadic(double a) {
  if (!std::isfinite(a)) throw DiophantineError("non-finite real coefficient");
  if (a == 0) return {};
  int e = 0;
  const double f = std::frexp(a, &e);
  auto mi = static_cast<long>(std::ldexp(f, 53));
  int sh = 53 - e;
  while (sh > 0 && mi % 2 == 0) {
    mi /= 2;
    --sh;
  }
  Dyadic d{Integer(mi), 0};
  if (sh < 0) {
    d.mant <<= static_cast<unsigned>(-sh);
  } else {
    d.shift = static_cast<unsigned>(sh);
  }
  return d;
}

// Numerator of frac(alpha * x) over 2^alpha.shift.
Integer frac_numerator(const Dyadic& a, const Integer& x) {
  if (a.shift == 0) return 0;
  Integer r;
  const Integer prod = a.mant * x;
  mpz_fdiv_r_2exp(r.get_mpz_t(), prod.get_mpz_t(), a.shift);
  return r;
}

double ratio_to_double(const Integer& num, unsigned shift) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, shift);
  mpq_class q(num, den);
  q.canonicalize();
  return q.get_d();
}

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0;
  double carry = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct ComplexSum {
  CompensatedSum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// e(phase) for phase given mod 1.
std::complex<double> unit_phase(long double phase) {
  phase -= std::floor(phase);
  if (phase >= 0.5L) phase -= 1.0L;
  const double angle = static_cast<double>(2.0L * std::numbers::pi_v<long double> * phase);
  return {std::cos(angle), std::sin(angle)};
}

// Phase contributions alpha_j n^j mod 1 for 64-bit n.
class PhaseEvaluator {
 public:
  explicit PhaseEvaluator(std::span<const double> coeffs) {
    for (double c : coeffs) {
      terms_.push_back(to_dyadic(c));
      Integer low;
      if (terms_.back().shift > 0 && terms_.back().shift <= 64) {
        mpz_fdiv_r_2exp(low.get_mpz_t(), terms_.back().mant.get_mpz_t(), terms_.back().shift);
      }
      low_.push_back(low.get_ui());
    }
  }

  long double operator()(std::uint64_t n) const {
    long double phase = 0;
    std::uint64_t power = 1;  // n^j mod 2^64
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const Dyadic& a = terms_[j];
      if (a.shift > 0 && a.shift <= 64) {
        const std::uint64_t mask = a.shift == 64 ? ~0ULL : ((1ULL << a.shift) - 1);
        const u128 prod = static_cast<u128>(low_[j]) * (power & mask);
        const u128 num = a.shift == 64 ? (prod & ~0ULL) : (prod & mask);
        phase += std::ldexp(static_cast<long double>(static_cast<std::uint64_t>(num)),
                            -static_cast<int>(a.shift));
      } else if (a.shift > 64) {
        const Integer x = pow(from_uint64(n), j);
        phase += ratio_to_double(frac_numerator(a, x), a.shift);
      }
      power *= n;
      phase -= std::floor(phase);
    }
    return phase;
  }

 private:
  std::vector<Dyadic> terms_;
  std::vector<std::uint64_t> low_;  // mant mod 2^shift for shift <= 64
};

constexpr std::uint64_t kMaxSumLength = 1000000000ULL;

}  // namespace

RealPoly::RealPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw DiophantineError("RealPoly coefficients must be finite");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t RealPoly::degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

void WeightSpec::validate() const {
  if (m == 0) throw DiophantineError("weight modulus m must be positive");
  if (b >= m) throw DiophantineError("weight residue b must lie in [0, m)");
  if (std::gcd(b, m) != 1) throw DiophantineError("weight residue b must be coprime to m");
}

double frac_norm(double x) {
  if (!std::isfinite(x)) throw DiophantineError("frac_norm of a non-finite value");
  return std::abs(x - std::nearbyint(x));
}

double frac_of_product(double alpha, const Integer& x) {
  const Dyadic a = to_dyadic(alpha);
  return ratio_to_double(frac_numerator(a, x), a.shift);
}

std::vector<double> weights(const WeightSpec& w, std::uint64_t N) {
  w.validate();
  std::vector<double> out(N, 0.0);
  if (N == 0) return out;
  for_each_prime(w.m + w.b, w.m * N + w.b, [&](std::uint64_t p) {
    if (p % w.m == w.b) out[(p - w.b) / w.m - 1] = std::log(static_cast<double>(p));
  });
  return out;
}

WeightSumCheck weight_sum_bounds_check(const WeightSpec& w, std::uint64_t N, double L) {
  w.validate();
  if (N == 0) throw DiophantineError("N must be positive");
  if (!(L > 0)) throw DiophantineError("L must be positive");
  const double limit = std::pow(static_cast<double>(N), 1.0 / L);
  if (static_cast<double>(w.m) > limit * (1 + 1e-12)) {
    throw DiophantineError("precondition m <= N^(1/L) violated");
  }
  CompensatedSum s;
  for (double x : weights(w, N)) s.add(x);
  const double n = static_cast<double>(N), m = static_cast<double>(w.m);
  return {s.value(), n / (m * m), n * m};
}

ExpSum exp_sum(const RealPoly& f, const WeightSpec& w, std::uint64_t from, std::uint64_t N,
               unsigned jobs) {
  w.validate();
  if (from == 0) from = 1;
  if (N > kMaxSumLength) throw DiophantineError("exp_sum: N exceeds the 1e9 guard");
  if (w.m > (std::uint64_t{1} << 62) / (N + 1)) throw DiophantineError("exp_sum: m*N+b overflows");
  ExpSum out;
  if (from > N) return out;

  const PhaseEvaluator phase(f.coeffs());
  constexpr std::uint64_t kBlock = 1 << 20;
  const std::uint64_t blocks = (N - from) / kBlock + 1;
  std::vector<ComplexSum> partial(blocks);
  std::vector<CompensatedSum> partial_weight(blocks);
  detail::parallel_for(blocks, jobs, [&](std::size_t i) {
    const std::uint64_t n0 = from + i * kBlock;
    const std::uint64_t n1 = std::min(N, n0 + kBlock - 1);
    for_each_prime(w.m * n0 + w.b, w.m * n1 + w.b, [&](std::uint64_t p) {
      if (p % w.m != w.b) return;
      const std::uint64_t n = (p - w.b) / w.m;
      const double lambda = std::log(static_cast<double>(p));
      partial[i].add(lambda * unit_phase(phase(n)));
      partial_weight[i].add(lambda);
    });
  });
  ComplexSum total;
  CompensatedSum weight;
  for (std::size_t i = 0; i < blocks; ++i) {
    total.add(partial[i].value());
    weight.add(partial_weight[i].value());
  }
  out.value = total.value();
  out.weight_sum = weight.value();
  return out;
}

double weyl_bound_eval(unsigned k, double q, double N, double m, double eps) {
  if (k == 0) throw DiophantineError("k must be >= 1");
  if (!(q > 0) || !(N > 0) || !(m > 0) || eps < 0) {
    throw DiophantineError("Weyl bound parameters must be positive");
  }
  const double Nm = N * m;
  if (k == 1) {
    const double L = std::log(N);
    return Nm * std::pow(L, 4) * (std::pow(q, -0.5) + std::pow(Nm, -0.2) + std::sqrt(q / N));
  }
  const double inner = 1.0 / q + std::pow(Nm, -0.5) + q * std::pow(N, -static_cast<double>(k));
  return std::pow(Nm, 1 + eps) * std::pow(inner, std::pow(4.0, 1.0 - k));
}

SimultaneousApprox simultaneous_approx(std::span<const double> alphas, std::uint64_t Q,
                                       std::span<const double> wts) {
  if (Q == 0) throw DiophantineError("Q must be >= 1");
  if (!wts.empty() && wts.size() != alphas.size()) {
    throw DiophantineError("weights must match the number of alphas");
  }
  std::vector<Dyadic> a;
  for (double x : alphas) a.push_back(to_dyadic(x));
  SimultaneousApprox best;
  bool have = false;
  std::vector<double> errs(alphas.size());
  for (std::uint64_t q = 1; q <= Q; ++q) {
    const Integer qz = from_uint64(q);
    double obj = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double fr = ratio_to_double(frac_numerator(a[j], qz), a[j].shift);
      errs[j] = std::min(fr, 1.0 - fr);
      obj = std::max(obj, errs[j] * (wts.empty() ? 1.0 : wts[j]));
    }
    if (!have || obj < best.objective) {
      best = {q, errs, obj};
      have = true;
    }
  }
  return best;
}

MontgomeryWitness montgomery_witness(std::span<const double> xs, std::span<const double> cs,
                                     std::uint64_t M) {
  if (M == 0) throw DiophantineError("M must be positive");
  if (xs.size() != cs.size()) throw DiophantineError("xs and cs must have the same length");
  std::string offending;
  CompensatedSum total;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (cs[i] < 0 || !std::isfinite(cs[i])) throw DiophantineError("weights must be nonnegative");
    total.add(cs[i]);
    if (frac_norm(xs[i]) * static_cast<double>(M) < 1.0 - 1e-12) {
      offending += (offending.empty() ? "" : ",") + std::to_string(i);
    }
  }
  if (!offending.empty()) {
    throw DiophantineError("hypothesis ||x_i|| >= 1/M violated at indices " + offending);
  }
  std::vector<Dyadic> dx;
  for (double x : xs) dx.push_back(to_dyadic(x));

  const double sum_c = total.value();
  MontgomeryWitness best{1, -1.0, sum_c / (6.0 * static_cast<double>(M))};
  for (std::uint64_t t = 1; t <= M; ++t) {
    const Integer tz = from_uint64(t);
    ComplexSum s;
    for (std::size_t i = 0; i < dx.size(); ++i) {
      const double fr = ratio_to_double(frac_numerator(dx[i], tz), dx[i].shift);
      s.add(cs[i] * unit_phase(fr));
    }
    const double mag = std::abs(s.value());
    if (mag >= best.magnitude - 1e-12 * std::max(sum_c, 1.0)) {
      best.t = t;
      best.magnitude = mag;
    }
  }
  if (best.magnitude < best.bound) {
    throw std::logic_error("Montgomery witness below (sum c)/(6M)");
  }
  return best;
}

SearchResult search_min_frac(std::span<const IntPoly> hs, const RealMatrix& A, std::uint64_t N,
                             std::optional<Progression> progression, unsigned jobs) {
  if (hs.empty()) throw DiophantineError("search needs at least one polynomial");
  if (A.rows == 0 || A.cols != hs.size() || A.entries.size() != A.rows * A.cols) {
    throw DiophantineError("matrix A must be l x k with k = number of polynomials");
  }
  if (N < 2) throw DiophantineError("N must be >= 2");
  const std::vector<std::uint64_t> primes = sieve_primes(N, progression);
  if (primes.empty()) throw DiophantineError("no prime in range/progression");

  std::vector<Dyadic> a;
  unsigned S = 0;
  for (double x : A.entries) {
    a.push_back(to_dyadic(x));
    S = std::max(S, a.back().shift);
  }
  Integer one;
  mpz_ui_pow_ui(one.get_mpz_t(), 2, S);  // 1 in units of 2^-S

  std::vector<std::vector<double>> values(primes.size());
  detail::parallel_for(primes.size(), jobs, [&](std::size_t idx) {
    const Integer p = from_uint64(primes[idx]);
    std::vector<Integer> h;
    for (const auto& poly : hs) h.push_back(eval(poly, p));
    auto& row = values[idx];
    row.resize(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) {
      Integer num = 0;
      for (std::size_t j = 0; j < A.cols; ++j) {
        const Dyadic& aij = a[i * A.cols + j];
        num += frac_numerator(aij, h[j]) << (S - aij.shift);
      }
      mpz_fdiv_r_2exp(num.get_mpz_t(), num.get_mpz_t(), S);
      const Integer other = one - num;
      row[i] = ratio_to_double(num < other ? num : other, S);
    }
  });

  std::size_t best = 0;
  double best_val = 0;
  for (std::size_t idx = 0; idx < primes.size(); ++idx) {
    const double m = *std::max_element(values[idx].begin(), values[idx].end());
    if (idx == 0 || m < best_val) {
      best = idx;
      best_val = m;
    }
  }
  return {primes[best], values[best], best_val, N, progression};
}

LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw DiophantineError("least squares needs >= 2 points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw DiophantineError("least squares needs two distinct abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

ThetaFit theta_fit(std::span<const IntPoly> hs, const RealMatrix& A,
                   std::span<const std::uint64_t> Ns, std::optional<Progression> progression,
                   unsigned jobs) {
  if (Ns.size() < 3) throw DiophantineError("theta fit needs at least three bounds");
  for (std::size_t i = 1; i < Ns.size(); ++i) {
    if (Ns[i] <= Ns[i - 1]) throw DiophantineError("bounds must be strictly increasing");
  }
  ThetaFit out;
  std::vector<double> lx, ly;
  for (std::uint64_t N : Ns) {
    out.points.push_back(search_min_frac(hs, A, N, progression, jobs));
    if (out.points.back().max_frac == 0) throw DiophantineError("degenerate: zero minima");
    lx.push_back(std::log(static_cast<double>(N)));
    ly.push_back(std::log(out.points.back().max_frac));
  }
  out.fit = least_squares(lx, ly);
  return out;
}

}  // namespace ipoly
