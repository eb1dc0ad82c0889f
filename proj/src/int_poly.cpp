#include "ipoly/int_poly.hpp"

#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace ipoly {

namespace {
const Integer kZero = 0;
}

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t e) {
  std::vector<Integer> v(e + 1);
  v[e] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<std::size_t> IntPoly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

std::size_t IntPoly::deg() const {
  if (coeffs_.empty()) throw std::domain_error("degree of the zero polynomial");
  return coeffs_.size() - 1;
}

const Integer& IntPoly::lead() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

const Integer& IntPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const Integer& c) {
  for (auto& a : coeffs_) a *= c;
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(out));
}

IntPoly operator-(IntPoly a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

Integer eval(const IntPoly& p, const Integer& x) {
  Integer acc = 0;
  const auto c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

Integer eval_mod(const IntPoly& p, const Integer& x, const Integer& m) {
  Integer acc = 0;
  const Integer xr = mod(x, m);
  const auto c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = mod(acc * xr + c[i], m);
  return acc;
}

IntPoly derivative(const IntPoly& p) {
  const auto c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<Integer> out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(out));
}

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  return divide_exact(p, content(p));
}

IntPoly compose_affine(const IntPoly& p, const Integer& d, const Integer& r) {
  // Horner in the polynomial ring: acc = acc*(d x + r) + a_i.
  const IntPoly lin(std::vector<Integer>{r, d});
  IntPoly acc;
  const auto c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * lin + IntPoly::constant(c[i]);
  return acc;
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by the zero polynomial");
  if (a.is_zero() || a.deg() < b.deg()) {
    return a;
  }
  const std::size_t db = b.deg();
  std::size_t e = a.deg() - db + 1;
  std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
  const auto bc = b.coeffs();
  const Integer& lb = b.lead();
  while (r.size() > db && !r.empty()) {
    const std::size_t dr = r.size() - 1;
    const Integer lr = r.back();
    for (auto& c : r) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) r[dr - db + j] -= lr * bc[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    --e;
  }
  IntPoly out(std::move(r));
  if (e > 0) out *= pow(lb, e);
  return out;
}

IntPoly divide_exact(const IntPoly& a, const Integer& c) {
  if (c == 0) throw std::domain_error("division by zero");
  std::vector<Integer> out;
  out.reserve(a.coeffs().size());
  for (const auto& x : a.coeffs()) {
    if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) {
      throw std::domain_error("inexact coefficient division");
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    out.push_back(std::move(q));
  }
  return IntPoly(std::move(out));
}

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.is_zero()) return {};
  if (a.deg() < b.deg()) throw std::domain_error("inexact polynomial division");
  std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
  const std::size_t db = b.deg();
  const auto bc = b.coeffs();
  std::vector<Integer> q(a.deg() - db + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    const Integer& top = r[i + db];
    if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t())) {
      throw std::domain_error("inexact polynomial division");
    }
    Integer t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) r[i + j] -= t * bc[j];
    q[i] = std::move(t);
  }
  for (const auto& c : r) {
    if (c != 0) throw std::domain_error("inexact polynomial division");
  }
  return IntPoly(std::move(q));
}

std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  const auto c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    const bool neg = c[i] < 0;
    const Integer mag = abs(c[i]);
    if (neg) {
      s += '-';
    } else if (!s.empty()) {
      s += '+';
    }
    if (i == 0) {
      s += mag.get_str();
      continue;
    }
    if (mag != 1) s += mag.get_str() + "*";
    s += 'x';
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

std::string canonical_hash(const IntPoly& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_string(p)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ipoly
