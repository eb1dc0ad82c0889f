// Acceptance suite: one PASS/FAIL line per criterion, with wall-clock time.

#include "oracles.hpp"

#include "ipoly/cli.hpp"
#include "ipoly/diophantine.hpp"
#include "ipoly/intersective.hpp"
#include "ipoly/parallel.hpp"
#include "ipoly/parse.hpp"
#include "ipoly/polycore.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

using namespace ipoly;
using nlohmann::json;

namespace {

const char* kEx1 = "(x^3-19)*(x^2+x+1)";
const char* kEx2 = "(x^2-13)*(x^2-17)*(x^2-221)";
const char* kCounterexample = "(x^4-5*x^2+x+4)*(x^3-10*x^2+9*x-1)";

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

struct Cli {
  int code;
  json doc;
};

Cli cli_json(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  json doc;
  try {
    doc = json::parse(out.str());
  } catch (const json::exception&) {
    doc = nullptr;
  }
  return {code, doc};
}

bool witness_set_covers(const json& verdict, std::initializer_list<const char*> primes) {
  for (const char* p : primes) {
    bool found = false;
    for (const auto& w : verdict["witnesses"]) found |= w["p"] == p && w["unit"] == true;
    if (!found) return false;
  }
  return true;
}

Outcome delta_reproduction() {
  Outcome o;
  const Cli a = cli_json({"delta", "x^3-19", "x^2+x+1"});
  o.expect(a.code == 0 && a.doc["abs"] == "29241", "Example 1 delta");
  o.expect(Integer(29241) == 81 * 361, "3^4*19^2");
  const Cli b = cli_json({"delta", "x^2-13", "x^2-17", "x^2-221"});
  o.expect(b.code == 0 && b.doc["abs"] == Integer(64 * 169 * 289).get_str(), "Example 2 delta");
  return o;
}

Outcome second_kind_certification() {
  Outcome o;
  const Cli a = cli_json({"check", "--kind", "second", "--bound", "10000", kEx1});
  o.expect(a.code == 0 && a.doc["status"] == "certified_up_to", "Example 1 certified");
  o.expect(witness_set_covers(a.doc, {"3", "19"}), "Example 1 witnesses at 3 and 19");
  const Cli b = cli_json({"check", "--kind", "second", "--bound", "10000", kEx2});
  o.expect(b.code == 0 && b.doc["status"] == "certified_up_to", "Example 2 certified");
  o.expect(witness_set_covers(b.doc, {"2", "13", "17"}), "Example 2 witnesses at 2, 13, 17");
  const Cli c = cli_json({"check", "--kind", "second", "--bound", "10000", kCounterexample});
  o.expect(c.code == 1 && c.doc["status"] == "fails", "counterexample fails");
  const json& f = c.doc["failure"];
  o.expect(f.is_object() && f["p"] == "2" && f["level"] == 1, "failure at 2");
  o.expect(f.is_object() && f["evaluations"].size() == 1 && f["evaluations"][0]["x"] == "1" &&
               f["evaluations"][0]["value"] == "1",
           "certificate P(1) = 1 mod 2");
  o.expect(c.doc["witnesses"].empty(), "no witnesses on failure");
  return o;
}

Outcome joint_condition() {
  Outcome o;
  const std::string times_x = to_string(parse_poly(std::string("x*") + kEx1));
  const Cli a = cli_json({"condition", "--l", "2", kEx1, times_x});
  o.expect(a.code == 0 && a.doc["status"] == "certified_up_to", "pair certified for l = 2");
  return o;
}

Outcome witness_19_cubed() {
  Outcome o;
  const IntPoly f = parse_poly("x^2+x+1");
  const auto rs = lift_roots(f, 19, 3);
  o.expect(!rs.empty(), "nonempty");
  for (const auto& r : rs) {
    o.expect(mod(r * r + r + 1, 6859) == 0, "r^2+r+1 = 0 mod 6859");
    o.expect(mod(r, 19) != 0, "gcd(r, 19) = 1");
  }
  o.expect(rs == oracle::scan_roots(f, 6859, false), "equals the full scan of [0, 6859)");
  return o;
}

Outcome modular_root_oracle() {
  Outcome o;
  constexpr int kPolys = 500;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coef(-9, 9);
  std::uniform_int_distribution<int> degree(0, 4);
  std::vector<std::vector<long>> polys;
  while (polys.size() < kPolys) {
    std::vector<long> c(degree(rng) + 1);
    for (auto& x : c) x = coef(rng);
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (c.size() == 1 && c[0] == 0) continue;
    polys.push_back(c);
  }
  std::atomic<long> mismatches{0};
  detail::parallel_for(polys.size(), workers(), [&](std::size_t i) {
    const auto& c = polys[i];
    const IntPoly f(std::vector<Integer>(c.begin(), c.end()));
    const bool coprime = i % 2 == 1;
    // Exact values P(r) for r < 2000 fit in 64 bits (|P(r)| < 9 * 5 * 2000^4).
    std::vector<long> values(2000);
    for (long r = 0; r < 2000; ++r) {
      long acc = 0;
      for (std::size_t j = c.size(); j-- > 0;) acc = acc * r + c[j];
      values[r] = acc;
    }
    for (long q = 1; q <= 2000; ++q) {
      std::vector<Integer> scan;
      for (long r = 0; r < q; ++r) {
        if (values[r] % q != 0) continue;
        if (coprime && std::gcd(r, q) != 1) continue;
        scan.push_back(r);
      }
      if (roots_mod_q(f, q, coprime) != scan) ++mismatches;
    }
  });
  o.expect(mismatches == 0, std::to_string(mismatches.load()) + " mismatches");
  return o;
}

Outcome rd_coherence() {
  Outcome o;
  const auto path = std::filesystem::temp_directory_path() / "ipoly_acceptance_rd.cache";
  std::filesystem::remove(path);
  const std::vector<IntPoly> hs{parse_poly(kEx1)};
  constexpr std::int64_t kMax = 2000;
  auto build = [&]() {
    RootCache cache(path);
    std::vector<std::int64_t> rd(kMax + 1);
    for (std::int64_t d = 1; d <= kMax; ++d) {
      const auto rec = make_rd(hs, d, cache);
      rd[d] = rec.r_d;
      o.expect(-d < rec.r_d && rec.r_d <= 0, "r_d in (-d, 0]");
      o.expect(std::gcd(rec.r_d, d) == 1, "gcd(r_d, d) = 1");
      o.expect(mod(eval(hs[0], rec.r_d), d) == 0, "P(r_d) = 0 mod d");
    }
    return rd;
  };
  const auto first = build();
  for (std::int64_t d = 1; d <= kMax; ++d)
    for (std::int64_t m = 2 * d; m <= kMax; m += d)
      o.expect(mod(first[m] - first[d], d) == 0, "r_dq = r_d mod d");
  const auto reloaded = build();
  std::filesystem::remove(path);
  const auto fresh = build();
  std::filesystem::remove(path);
  o.expect(first == reloaded, "reload reproduces r_d");
  o.expect(first == fresh, "deleted cache reproduces r_d");
  return o;
}

Outcome nice_systems() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> count(1, 4), dr(-10, 10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> degs{1, 2, 3, 4, 5, 6};
    std::shuffle(degs.begin(), degs.end(), rng);
    degs.resize(count(rng));
    std::sort(degs.begin(), degs.end());
    std::vector<IntPoly> fs;
    for (auto e : degs) {
      const IntPoly f = oracle::random_poly(rng, e, 9);
      fs.push_back(f - IntPoly::constant(f.coeff(0)));
    }
    int d = 0;
    while (d == 0) d = dr(rng);
    const int r = dr(rng);
    const auto s = nice_transform(fs, d, r);
    std::vector<IntPoly> shifted;
    for (const auto& f : fs) shifted.push_back(oracle::substitute(f, d, r));
    o.expect(apply_matrix(s.T, shifted) == s.g, "T (f_i(dx+r)) = (g_i)");
    o.expect(is_nice(s.g), "property (1): nice");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      o.expect(!s.g[i].is_zero() && s.g[i].deg() == fs[i].deg(), "property (2): degrees");
      o.expect(!s.g[i].is_zero() && s.g[i].lead() == s.c * pow(Integer(d), fs[i].deg()) * fs[i].lead(),
               "property (3): leading coefficients");
      o.expect(s.T(i, i) == s.c, "diagonal c");
      for (std::size_t j = i + 1; j < fs.size(); ++j) o.expect(s.T(i, j) == 0, "lower triangular");
    }
  }
  return o;
}

Outcome montgomery_bound() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::uint64_t> Ms(2, 50), Ns(1, 500);
  std::uniform_real_distribution<double> c(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t M = Ms(rng);
    const double lo = 1.0 / static_cast<double>(M);
    std::uniform_real_distribution<double> x(lo, 1 - lo);
    std::vector<double> xs(Ns(rng)), cs(xs.size());
    for (auto& v : xs) v = x(rng) + static_cast<double>(static_cast<int>(rng() % 7) - 3);
    for (auto& v : cs) v = c(rng);
    try {
      const auto w = montgomery_witness(xs, cs, M);
      const double bound = std::accumulate(cs.begin(), cs.end(), 0.0) / (6.0 * static_cast<double>(M));
      o.expect(w.t >= 1 && w.t <= M, "t in [1, M]");
      o.expect(w.magnitude >= bound, "|S_t| >= sum(c)/(6M)");
    } catch (const std::exception& e) {
      o.expect(false, e.what());
    }
  }
  return o;
}

Outcome search_and_decay() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<std::uint64_t> Ns(2, 10000);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 3, l = 1 + (trial / 3) % 2;
    std::vector<IntPoly> hs;
    for (std::size_t j = 0; j < k; ++j) hs.push_back(oracle::random_poly(rng, 1 + (trial + j) % 4, 9));
    std::vector<double> e(l * k);
    for (auto& v : e) v = u(rng);
    const RealMatrix A{l, k, e};
    const std::uint64_t N = Ns(rng);
    const auto got = search_min_frac(hs, A, N, std::nullopt, workers());
    const auto ref = oracle::naive_search(hs, A, N, std::nullopt);
    o.expect(got.p == ref.p, "prime choice, trial " + std::to_string(trial));
    o.expect(std::abs(got.max_frac - ref.max_frac) <= 1e-12, "max_frac, trial " + std::to_string(trial));
  }
  const std::vector<IntPoly> sq{parse_poly("x^2")};
  std::vector<std::uint64_t> Ns_fit;
  for (unsigned e = 10; e <= 16; ++e) Ns_fit.push_back(std::uint64_t{1} << e);
  const auto fit = theta_fit(sq, RealMatrix{1, 1, {std::sqrt(2.0)}}, Ns_fit, std::nullopt, workers());
  std::ostringstream s;
  s << "slope " << fit.fit.slope;
  o.expect(fit.fit.slope < -0.05, s.str());
  if (o.ok) o.detail = s.str();
  return o;
}

Outcome exp_sum_sanity() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> coef(-5, 5);
  std::uniform_int_distribution<long> icoef(-20, 20);
  std::uniform_int_distribution<std::uint64_t> ms(1, 20), Ns(1, 10000), deg(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t m = ms(rng);
    std::uint64_t b = rng() % m;
    while (std::gcd(b, m) != 1) b = (b + 1) % m;
    const std::uint64_t N = Ns(rng);
    std::vector<double> f(deg(rng) + 1), g(f.size());
    for (auto& a : f) a = coef(rng);
    for (auto& a : g) a = static_cast<double>(icoef(rng));
    const auto s = exp_sum(RealPoly(f), {m, b}, 1, N);
    o.expect(std::abs(s.value) <= s.weight_sum * (1 + 1e-12), "|S| <= weight sum");
    const auto t = exp_sum(RealPoly(g), {m, b}, 1, N);
    o.expect(std::abs(t.value.imag()) < 1e-9 * std::max(t.weight_sum, 1.0), "integer f: Im S ~ 0");
  }
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
  for (double N : {1e4, 1e8}) {
    o.expect(close(weyl_bound_eval(2, N, N, 1, 0), N * std::pow(2 / N + std::pow(N, -0.5), 0.25)),
             "k=2, q=N");
    o.expect(weyl_bound_eval(1, 1, N, 1, 0) >= N * std::pow(std::log(N), 4), "k=1, q=1");
    o.expect(close(weyl_bound_eval(3, std::pow(N, 1.5), N, 1, 0),
                   N * std::pow(2 * std::pow(N, -1.5) + std::pow(N, -0.5), 1.0 / 16)),
             "k=3, q=N^(3/2)");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria{
      {"delta reproduction", delta_reproduction, 1},
      {"second-kind certification", second_kind_certification, 30},
      {"joint condition", joint_condition, 10},
      {"19^3 witness", witness_19_cubed, 10},
      {"modular-root oracle", modular_root_oracle, 60},
      {"r_d coherence", rd_coherence, 60},
      {"nice-system properties", nice_systems, 60},
      {"Montgomery witness bound", montgomery_bound, 60},
      {"search oracle and decay", search_and_decay, 300},
      {"exponential-sum sanity", exp_sum_sanity, 60},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > criteria[i].budget_seconds) {
      o.expect(false, "over time budget");
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].name << " ("
              << secs << " s)";
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
