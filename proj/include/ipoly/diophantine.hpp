#pragma once

// Weighted exponential sums over primes in progressions, Weyl-type bound
// evaluation, simultaneous approximation, the Montgomery witness, and
// minimization of fractional parts of polynomial systems at primes.

#include "ipoly/int_poly.hpp"
#include "ipoly/primes.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ipoly {

/// Raised for violated preconditions of the numerical routines.
class DiophantineError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// alpha_0 + alpha_1 x + ... + alpha_k x^k with finite double coefficients.
/// A constant term is allowed and acts as a global phase.
class RealPoly {
 public:
  explicit RealPoly(std::vector<double> coeffs);
  std::span<const double> coeffs() const { return coeffs_; }
  /// Index of the last nonzero coefficient (0 for constants).
  std::size_t degree() const;

 private:
  std::vector<double> coeffs_;
};

/// Weight lambda_{m,b}(n) = log(m n + b) if m n + b is prime, else 0.
struct WeightSpec {
  std::uint64_t m = 1;
  std::uint64_t b = 0;
  /// Throws unless 0 <= b < m and gcd(b, m) = 1.
  void validate() const;
};

/// Row-major real l x k matrix.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

/// Distance to the nearest integer, in [0, 1/2].
double frac_norm(double x);

/// Fractional part of alpha * x in [0, 1), computed exactly from the binary
/// value of alpha before the final rounding.
double frac_of_product(double alpha, const Integer& x);

/// lambda_{m,b}(n) for n = 1..N (index n-1), natural logarithm.
std::vector<double> weights(const WeightSpec& w, std::uint64_t N);

struct WeightSumCheck {
  double sum = 0;
  double lower = 0;  ///< N m^-2
  double upper = 0;  ///< N m
};

/// The weight sum together with the two bracket values; no constant is asserted.
/// Requires m <= N^(1/L).
WeightSumCheck weight_sum_bounds_check(const WeightSpec& w, std::uint64_t N, double L);

struct ExpSum {
  std::complex<double> value;
  double weight_sum = 0;
};

/// sum_{n = from..N} lambda(n) e(f(n)) with compensated summation. N <= 1e9.
/// Blocks of fixed size are merged in order, so the result does not depend on jobs.
ExpSum exp_sum(const RealPoly& f, const WeightSpec& w, std::uint64_t from, std::uint64_t N,
               unsigned jobs = 1);

/// Right-hand side of the Weyl-type estimate, without implied constant:
///   k > 1: (Nm)^(1+eps) (1/q + (Nm)^(-1/2) + q N^(-k))^(4^(1-k))
///   k = 1: Nm (log N)^4 (q^(-1/2) + (Nm)^(-1/5) + N^(-1/2) q^(1/2))
double weyl_bound_eval(unsigned k, double q, double N, double m, double eps);

struct SimultaneousApprox {
  std::uint64_t q = 1;
  std::vector<double> errors;  ///< ||q alpha_j||
  double objective = 0;        ///< max_j errors[j] * weight_j
};

/// Exhaustive scan over q = 1..Q minimizing max_j ||q alpha_j|| * weight_j
/// (weights default to 1); the smallest q wins ties.
SimultaneousApprox simultaneous_approx(std::span<const double> alphas, std::uint64_t Q,
                                       std::span<const double> weights = {});

struct MontgomeryWitness {
  std::uint64_t t = 1;
  double magnitude = 0;  ///< |sum c_n e(t x_n)|
  double bound = 0;      ///< (sum c) / (6M)
};

/// Scans t = 1..M for the largest |sum_n c_n e(t x_n)|. Requires ||x_i|| >= 1/M
/// and c_n >= 0. Magnitudes equal to 1e-12 relative are tied and the larger t
/// is kept. Throws std::logic_error if the witness misses the bound.
MontgomeryWitness montgomery_witness(std::span<const double> xs, std::span<const double> cs,
                                     std::uint64_t M);

struct SearchResult {
  std::uint64_t p = 0;
  std::vector<double> values;  ///< ||v_i(p)||
  double max_frac = 0;
  std::uint64_t N = 0;
  std::optional<Progression> progression;
};

/// min over primes p <= N (optionally p = r mod d) of max_i ||v_i(p)|| with
/// v = A (h_1(p), ..., h_k(p)). Values are exact up to the final rounding;
/// the smallest prime wins ties.
SearchResult search_min_frac(std::span<const IntPoly> hs, const RealMatrix& A, std::uint64_t N,
                             std::optional<Progression> progression = std::nullopt,
                             unsigned jobs = 1);

struct LineFit {
  double slope = 0;
  double intercept = 0;
};

/// Ordinary least squares y = slope * x + intercept; needs two distinct x.
LineFit least_squares(std::span<const double> xs, std::span<const double> ys);

struct ThetaFit {
  LineFit fit;  ///< log(max_frac) against log N; slope is the empirical -theta
  std::vector<SearchResult> points;
};

/// Runs search_min_frac for each N in Ns (at least 3, increasing) and fits the
/// decay on a log-log scale. Throws DiophantineError if a minimum is zero.
ThetaFit theta_fit(std::span<const IntPoly> hs, const RealMatrix& A,
                   std::span<const std::uint64_t> Ns,
                   std::optional<Progression> progression = std::nullopt, unsigned jobs = 1);

}  // namespace ipoly
