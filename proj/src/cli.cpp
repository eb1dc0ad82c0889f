#include "ipoly/cli.hpp"

#include "ipoly/parse.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

namespace ipoly::cli {

using nlohmann::json;

json to_json(const PadicRoot& root) {
  json slack = nullptr;
  if (root.slack) {
    slack = {{"v_value", root.slack->v_value ? json(*root.slack->v_value) : json(nullptr)},
             {"v_derivative", root.slack->v_derivative}};
  }
  return {{"p", root.p.get_str()}, {"k", root.k}, {"r", root.r.get_str()},
          {"unit", root.unit}, {"slack", slack}};
}

json to_json(const IntersectivityVerdict& v) {
  json witnesses = json::array();
  for (const auto& [p, root] : v.witnesses) witnesses.push_back(to_json(root));
  json failure = nullptr;
  if (const Failure* f = v.failure()) {
    json evals = json::array();
    for (const auto& [x, value] : f->evaluations) {
      evals.push_back({{"x", x.get_str()}, {"value", value.get_str()}});
    }
    failure = {{"p", f->p.get_str()}, {"level", f->level}, {"reason", f->reason},
               {"evaluations", evals}};
  }
  return {{"kind", to_string(v.kind)},
          {"status", v.certified() ? "certified_up_to" : "fails"},
          {"witnesses", witnesses},
          {"scan_bound", v.scan_bound},
          {"failure", failure},
          {"content_removed", v.content_removed.get_str()},
          {"examined", to_string(v.examined)},
          {"note", v.note ? json(*v.note) : json(nullptr)}};
}

json to_json(const RdRecord& rec) {
  json roots = json::array();
  for (const auto& [p, root] : rec.roots) roots.push_back(to_json(root));
  return {{"d", rec.d}, {"r_d", rec.r_d}, {"roots", roots}};
}

json to_json(const SearchResult& r) {
  json d = nullptr, rd = nullptr;
  if (r.progression) {
    d = r.progression->d;
    rd = r.progression->r == 0 ? std::int64_t{0}
                               : static_cast<std::int64_t>(r.progression->r) -
                                     static_cast<std::int64_t>(r.progression->d);
  }
  return {{"p", r.p}, {"values", r.values}, {"max_frac", r.max_frac},
          {"N", r.N}, {"d", d},           {"r_d", rd}};
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

json to_json(const NiceSystem& s) {
  json g = json::array();
  for (const auto& p : s.g) g.push_back(to_string(p));
  return {{"c", s.c.get_str()}, {"d", s.d.get_str()}, {"r", s.r.get_str()},
          {"T", to_json(s.T)},  {"g", g}};
}

RealMatrix parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("matrix is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
  RealMatrix m;
  m.rows = j.size();
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) throw std::invalid_argument("matrix rows must be nonempty arrays");
    if (m.cols == 0) m.cols = row.size();
    if (row.size() != m.cols) throw std::invalid_argument("matrix rows must have equal length");
    for (const auto& x : row) {
      if (!x.is_number()) throw std::invalid_argument("matrix entries must be numbers");
      m.entries.push_back(x.get<double>());
    }
  }
  return m;
}

std::vector<double> parse_reals(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("not a JSON array: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw std::invalid_argument("array entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  json doc;
  Table table;
  int code = kSuccess;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_csv(const Table& t, std::ostream& out) {
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

std::vector<IntPoly> parse_all(const std::vector<std::string>& texts) {
  std::vector<IntPoly> out;
  for (const auto& t : texts) out.push_back(parse_poly(t));
  return out;
}

Table verdict_table(const IntersectivityVerdict& v) {
  Table t{{"kind", "status", "scan_bound", "p", "k", "r", "unit", "reason"}, {}};
  const std::string status = v.certified() ? "certified_up_to" : "fails";
  const std::string bound = std::to_string(v.scan_bound);
  if (const Failure* f = v.failure()) {
    t.rows.push_back({to_string(v.kind), status, bound, f->p.get_str(), std::to_string(f->level),
                      "", "", f->reason});
  }
  for (const auto& [p, root] : v.witnesses) {
    t.rows.push_back({to_string(v.kind), status, bound, p.get_str(), std::to_string(root.k),
                      root.r.get_str(), root.unit ? "1" : "0", ""});
  }
  return t;
}

Output verdict_output(const IntersectivityVerdict& v) {
  return {to_json(v), verdict_table(v), v.certified() ? kSuccess : kNegative};
}

std::optional<Progression> progression_from(std::optional<std::uint64_t> d,
                                            std::optional<std::int64_t> r) {
  if (!d && !r) return std::nullopt;
  if (!d || !r) throw std::invalid_argument("--d and --r must be given together");
  if (*d == 0) throw std::invalid_argument("--d must be positive");
  const auto dd = static_cast<std::int64_t>(*d);
  return Progression{*d, static_cast<std::uint64_t>(((*r % dd) + dd) % dd)};
}

Table search_table(const SearchResult& r) {
  Table t{{"N", "p", "max_frac", "d", "r_d"}, {}};
  const json j = to_json(r);
  t.rows.push_back({std::to_string(r.N), std::to_string(r.p), num(r.max_frac),
                    j["d"].is_null() ? "" : j["d"].dump(), j["r_d"].is_null() ? "" : j["r_d"].dump()});
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intersective polynomial certification and Diophantine experiments", "ipoly"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string cache_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "Seed for randomized root splitting");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache", cache_path, "Root cache file (default $IPOLY_ROOT_CACHE or ./ipoly_roots.cache)");

  std::vector<std::string> polys;
  std::string kind_text = "second";
  std::uint64_t bound = 10000;
  std::optional<std::uint64_t> d_opt, N_opt;
  std::optional<std::int64_t> r_opt;

  auto* delta = app.add_subcommand("delta", "Product of Res(h, h') over irreducible factors");
  delta->add_option("factors", polys, "Irreducible factors")->required();

  auto* roots = app.add_subcommand("roots", "Roots modulo p, p^k or q");
  std::string p_text, q_text;
  unsigned k = 1;
  bool coprime = false;
  roots->add_option("poly", polys, "Polynomial")->required()->expected(1);
  roots->add_option("--p", p_text, "Prime");
  roots->add_option("--k", k, "Precision exponent")->check(CLI::PositiveNumber);
  roots->add_option("--q", q_text, "Composite modulus");
  roots->add_flag("--coprime", coprime, "Keep only residues coprime to the modulus");

  auto* certify = app.add_subcommand("certify", "p-adic root certification at one prime");
  certify->add_option("poly", polys, "Polynomial")->required()->expected(1);
  certify->add_option("--p", p_text, "Prime")->required();
  certify->add_option("--kind", kind_text, "first|second");

  auto* check = app.add_subcommand("check", "Intersectivity verdict for one polynomial");
  check->add_option("poly", polys, "Polynomial")->required()->expected(1);
  check->add_option("--kind", kind_text, "first|second");
  check->add_option("--bound", bound, "Unramified scan bound");

  auto* joint = app.add_subcommand("joint", "Joint intersectivity of a family");
  joint->add_option("polys", polys, "Polynomials")->required();
  joint->add_option("--kind", kind_text, "first|second");
  joint->add_option("--bound", bound, "Unramified scan bound");

  auto* condition = app.add_subcommand("condition", "Local condition for l linear combinations");
  unsigned l = 0;
  condition->add_option("polys", polys, "Polynomials")->required();
  condition->add_option("--l", l, "Number of linear combinations")->required()->check(CLI::PositiveNumber);
  condition->add_option("--bound", bound, "Unramified scan bound");

  auto* rd = app.add_subcommand("rd", "Coherent residue r_d");
  std::vector<std::uint64_t> ds;
  rd->add_option("polys", polys, "Polynomials")->required();
  rd->add_option("--d", ds, "Modulus d (comma separated list allowed)")->required()->delimiter(',');

  auto* nice = app.add_subcommand("nice", "Nice-system transform of f_i(d x + r)");
  std::string nd_text = "1", nr_text = "0";
  nice->add_option("polys", polys, "Polynomials of increasing degree")->required();
  nice->add_option("--d", nd_text, "Substitution scale");
  nice->add_option("--r", nr_text, "Substitution shift");

  auto* basis = app.add_subcommand("basis", "Distinct-degree basis of the Z-module");
  basis->add_option("polys", polys, "Polynomials")->required();

  auto* expsum = app.add_subcommand("expsum", "Weighted exponential sum over primes");
  std::string f_text;
  std::uint64_t m = 1, b = 0, L = 0;
  expsum->add_option("--f", f_text, "JSON coefficients [a0, a1, ..., ak]")->required();
  expsum->add_option("--m", m, "Progression modulus");
  expsum->add_option("--b", b, "Progression residue");
  expsum->add_option("--N", N_opt, "Upper end of the range")->required();
  expsum->add_option("--L", L, "Sum over n = L+1..N");

  auto* weyl = app.add_subcommand("weyl-bound", "Evaluate the Weyl-type bound");
  unsigned wk = 1;
  double wq = 1, wN = 1, wm = 1, eps = 0;
  weyl->add_option("--k", wk, "Degree")->required()->check(CLI::PositiveNumber);
  weyl->add_option("--q", wq, "Denominator q")->required();
  weyl->add_option("--N", wN, "N")->required();
  weyl->add_option("--m", wm, "Modulus m");
  weyl->add_option("--eps", eps, "Epsilon");

  auto* simul = app.add_subcommand("simul", "Brute-force simultaneous approximation");
  std::string alphas_text, weights_text;
  std::uint64_t Q = 1;
  simul->add_option("--alphas", alphas_text, "JSON array of reals")->required();
  simul->add_option("--Q", Q, "Largest denominator")->required();
  simul->add_option("--weights", weights_text, "JSON array of weights");

  auto* montgomery = app.add_subcommand("montgomery", "Montgomery witness search");
  std::string xs_text, cs_text;
  std::uint64_t M = 1;
  montgomery->add_option("--xs", xs_text, "JSON array of reals")->required();
  montgomery->add_option("--cs", cs_text, "JSON array of nonnegative weights (default all 1)");
  montgomery->add_option("--M", M, "M")->required();

  auto* search = app.add_subcommand("search", "Minimize fractional parts over primes");
  std::string A_text;
  search->add_option("polys", polys, "Polynomials h_j")->required();
  search->add_option("--A", A_text, "JSON row-major l x k matrix")->required();
  search->add_option("--N", N_opt, "Search bound")->required();
  search->add_option("--d", d_opt, "Progression modulus");
  search->add_option("--r", r_opt, "Progression residue");

  auto* theta = app.add_subcommand("theta-fit", "Empirical decay exponent of the minimum");
  std::vector<std::uint64_t> Ns;
  theta->add_option("polys", polys, "Polynomials h_j")->required();
  theta->add_option("--A", A_text, "JSON row-major l x k matrix")->required();
  theta->add_option("--Ns", Ns, "Comma separated bounds")->required()->delimiter(',');
  theta->add_option("--d", d_opt, "Progression modulus");
  theta->add_option("--r", r_opt, "Progression residue");

  auto* primes = app.add_subcommand("primes", "Primes up to N, optionally in a progression");
  primes->add_option("--N", N_opt, "Upper bound")->required();
  primes->add_option("--d", d_opt, "Progression modulus");
  primes->add_option("--r", r_opt, "Progression residue");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  RootOptions root_opts;
  root_opts.seed = seed;
  CertifyOptions certify_opts{root_opts, std::nullopt};
  CheckOptions check_opts{bound, jobs, certify_opts};

  Output result;
  try {
    if (delta->parsed()) {
      const auto fs = parse_all(polys);
      const Integer value = delta_factored(fs);
      json factors = json::array();
      for (const auto& f : fs) factors.push_back(to_string(f));
      result.doc = {{"delta", value.get_str()}, {"abs", Integer(abs(value)).get_str()}, {"factors", factors}};
      result.table = {{"delta", "abs"}, {{value.get_str(), Integer(abs(value)).get_str()}}};
    } else if (roots->parsed()) {
      const IntPoly P = parse_poly(polys.at(0));
      if (p_text.empty() == q_text.empty()) throw std::invalid_argument("give exactly one of --p or --q");
      std::vector<Integer> rs;
      Integer modulus;
      if (!p_text.empty()) {
        const Integer p = parse_integer(p_text);
        rs = k == 1 && !coprime ? roots_mod_p(P, p, root_opts) : lift_roots(P, p, k, root_opts, coprime);
        modulus = pow(p, k);
      } else {
        modulus = parse_integer(q_text);
        rs = roots_mod_q(P, modulus, coprime, root_opts);
      }
      json arr = json::array();
      result.table.header = {"modulus", "root"};
      for (const auto& r : rs) {
        arr.push_back(r.get_str());
        result.table.rows.push_back({modulus.get_str(), r.get_str()});
      }
      result.doc = {{"modulus", modulus.get_str()}, {"roots", arr}, {"count", rs.size()}};
    } else if (certify->parsed()) {
      const IntPoly P = parse_poly(polys.at(0));
      const Integer p = parse_integer(p_text);
      const Kind kind = parse_kind(kind_text);
      const auto root = certify_padic_root(P, p, kind, certify_opts);
      result.doc = {{"p", p.get_str()}, {"kind", to_string(kind)},
                    {"root", root ? to_json(*root) : json(nullptr)}};
      result.table = {{"p", "kind", "k", "r", "unit"}, {}};
      if (root) {
        result.table.rows.push_back({p.get_str(), to_string(kind), std::to_string(root->k),
                                     root->r.get_str(), root->unit ? "1" : "0"});
      }
      result.code = root ? kSuccess : kNegative;
    } else if (check->parsed()) {
      result = verdict_output(check_intersective(parse_poly(polys.at(0)), parse_kind(kind_text), check_opts));
    } else if (joint->parsed()) {
      result = verdict_output(check_joint(parse_all(polys), parse_kind(kind_text), check_opts));
    } else if (condition->parsed()) {
      result = verdict_output(check_theorem_condition(parse_all(polys), l, check_opts));
    } else if (rd->parsed()) {
      const auto hs = parse_all(polys);
      RootCache cache(cache_path.empty() ? default_cache_path() : std::filesystem::path(cache_path));
      json records = json::array();
      result.table.header = {"d", "r_d"};
      for (std::uint64_t d : ds) {
        const RdRecord rec = make_rd(hs, d, cache, certify_opts);
        records.push_back(to_json(rec));
        result.table.rows.push_back({std::to_string(rec.d), std::to_string(rec.r_d)});
      }
      result.doc = records.size() == 1 ? records[0] : json{{"records", records}};
    } else if (nice->parsed()) {
      const auto fs = parse_all(polys);
      const NiceSystem s = nice_transform(fs, parse_integer(nd_text), parse_integer(nr_text));
      result.doc = to_json(s);
      result.table.header = {"i", "g_i", "T_row"};
      for (std::size_t i = 0; i < s.g.size(); ++i) {
        std::string row;
        for (std::size_t j = 0; j < s.T.cols(); ++j) row += (j ? " " : "") + s.T(i, j).get_str();
        result.table.rows.push_back({std::to_string(i + 1), to_string(s.g[i]), row});
      }
    } else if (basis->parsed()) {
      const auto hs = parse_all(polys);
      const auto dd = distinct_degree_basis(hs);
      json bs = json::array();
      result.table.header = {"j", "g_j"};
      for (std::size_t j = 0; j < dd.basis.size(); ++j) {
        bs.push_back(to_string(dd.basis[j]));
        result.table.rows.push_back({std::to_string(j + 1), to_string(dd.basis[j])});
      }
      result.doc = {{"basis", bs}, {"M", to_json(dd.M)}};
    } else if (expsum->parsed()) {
      const RealPoly f(parse_reals(f_text));
      const WeightSpec w{m, b};
      const ExpSum s = exp_sum(f, w, L + 1, *N_opt, jobs);
      result.doc = {{"re", s.value.real()}, {"im", s.value.imag()}, {"abs", std::abs(s.value)},
                    {"weight_sum", s.weight_sum}};
      result.table = {{"re", "im", "abs", "weight_sum"},
                      {{num(s.value.real()), num(s.value.imag()), num(std::abs(s.value)), num(s.weight_sum)}}};
    } else if (weyl->parsed()) {
      const double value = weyl_bound_eval(wk, wq, wN, wm, eps);
      result.doc = {{"bound", value}, {"k", wk}, {"q", wq}, {"N", wN}, {"m", wm}, {"eps", eps}};
      result.table = {{"k", "q", "N", "m", "eps", "bound"},
                      {{std::to_string(wk), num(wq), num(wN), num(wm), num(eps), num(value)}}};
    } else if (simul->parsed()) {
      const auto alphas = parse_reals(alphas_text);
      const auto wts = weights_text.empty() ? std::vector<double>{} : parse_reals(weights_text);
      const auto s = simultaneous_approx(alphas, Q, wts);
      result.doc = {{"q", s.q}, {"errors", s.errors}, {"objective", s.objective}};
      result.table = {{"q", "objective"}, {{std::to_string(s.q), num(s.objective)}}};
    } else if (montgomery->parsed()) {
      const auto xs = parse_reals(xs_text);
      const auto cs = cs_text.empty() ? std::vector<double>(xs.size(), 1.0) : parse_reals(cs_text);
      const auto w = montgomery_witness(xs, cs, M);
      result.doc = {{"t", w.t}, {"abs", w.magnitude}, {"bound", w.bound}};
      result.table = {{"t", "abs", "bound"}, {{std::to_string(w.t), num(w.magnitude), num(w.bound)}}};
    } else if (search->parsed()) {
      const auto r = search_min_frac(parse_all(polys), parse_matrix(A_text), *N_opt,
                                     progression_from(d_opt, r_opt), jobs);
      result.doc = to_json(r);
      result.table = search_table(r);
    } else if (theta->parsed()) {
      const auto fit = theta_fit(parse_all(polys), parse_matrix(A_text), Ns,
                                 progression_from(d_opt, r_opt), jobs);
      json points = json::array();
      result.table.header = {"N", "p", "max_frac"};
      for (const auto& pt : fit.points) {
        points.push_back({{"N", pt.N}, {"p", pt.p}, {"max_frac", pt.max_frac}});
        result.table.rows.push_back({std::to_string(pt.N), std::to_string(pt.p), num(pt.max_frac)});
      }
      result.doc = {{"slope", fit.fit.slope}, {"intercept", fit.fit.intercept}, {"points", points}};
    } else if (primes->parsed()) {
      const auto ps = sieve_primes(*N_opt, progression_from(d_opt, r_opt));
      result.doc = {{"count", ps.size()}, {"primes", ps}};
      result.table.header = {"p"};
      for (auto p : ps) result.table.rows.push_back({std::to_string(p)});
    }
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (format == "csv") {
    write_csv(result.table, out);
  } else {
    out << result.doc.dump() << '\n';
  }
  return result.code;
}

}  // namespace ipoly::cli
