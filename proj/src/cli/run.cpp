#include "ckh/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/Core>
#include <boost/version.hpp>

#include "ckh/ck/cauchy.hpp"
#include "ckh/ck/linear.hpp"
#include "ckh/ck/problem_json.hpp"
#include "ckh/error.hpp"
#include "ckh/series/convergence.hpp"
#include "ckh/series/series_json.hpp"
#include "ckh/topology/metric.hpp"
#include "ckh/wiener/field.hpp"
#include "ckh/wiener/green.hpp"
#include "ckh/wiener/rng.hpp"
#include "ckh/wiener/weights.hpp"

namespace ckh {

using nlohmann::json;

std::string library_version() { return "0.1.0"; }

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"zeta",    "solve",           "radius",
                                              "topology-check", "weights", "divergence-check",
                                              "green-check",    "holmgren-demo"};
  return names;
}

namespace {

// Parameter lookup with precedence flags > file > default. Every value used
// is echoed into `inputs`; keys that fell back to a default are listed.
class Params {
 public:
  explicit Params(const ScenarioConfig& c) : c_(c) {}

  double real(const std::string& key, double def, bool positive = false) {
    const json* v = find(key);
    double x = def;
    if (v) {
      if (v->is_number()) {
        x = v->get<double>();
      } else if (v->is_string()) {
        x = parse_real(key, v->get<std::string>());
      } else {
        fail(key, "must be a number");
      }
    }
    if (!std::isfinite(x)) fail(key, "must be finite");
    if (positive && !(x > 0.0)) fail(key, "must be positive");
    record(key, x, !v);
    return x;
  }

  std::uint64_t integer(const std::string& key, std::uint64_t def, std::uint64_t lo,
                        std::uint64_t hi) {
    const json* v = find(key);
    std::uint64_t x = def;
    if (v) {
      if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
        x = v->get<std::uint64_t>();
      } else if (v->is_number_float() && std::floor(v->get<double>()) == v->get<double>() &&
                 v->get<double>() >= 0.0) {
        x = static_cast<std::uint64_t>(v->get<double>());
      } else if (v->is_string()) {
        double d = parse_real(key, v->get<std::string>());
        if (!(d >= 0.0) || std::floor(d) != d || d >= 1.8e19) fail(key, "must be a nonnegative integer");
        x = static_cast<std::uint64_t>(d);
      } else {
        fail(key, "must be a nonnegative integer");
      }
    }
    if (x < lo || x > hi) {
      fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    record(key, x, !v);
    return x;
  }

  bool flag(const std::string& key, bool def) {
    const json* v = find(key);
    bool x = def;
    if (v) {
      if (!v->is_boolean()) fail(key, "must be true or false");
      x = v->get<bool>();
    }
    record(key, x, !v);
    return x;
  }

  std::string choice(const std::string& key, const std::string& def,
                     const std::vector<std::string>& allowed) {
    const json* v = find(key);
    std::string x = def;
    if (v) {
      if (!v->is_string()) fail(key, "must be a string");
      x = v->get<std::string>();
    }
    if (std::find(allowed.begin(), allowed.end(), x) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
      fail(key, "must be one of " + list);
    }
    record(key, x, !v);
    return x;
  }

  std::optional<std::string> path(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string() || v->get<std::string>().empty()) fail(key, "must be a file path");
    record(key, v->get<std::string>(), false);
    return v->get<std::string>();
  }

  std::uint64_t seed() {
    const json* v = find("seed");
    if (v) return integer("seed", 0, 0, std::numeric_limits<std::uint64_t>::max());
    std::uint64_t s = default_seed();
    record("seed", s, true);
    return s;
  }

  // Rejects keys no handler asked for.
  void finish() const {
    for (const json* obj : {&c_.params, &c_.file_params}) {
      for (auto it = obj->begin(); it != obj->end(); ++it) {
        if (!used_.count(it.key()) && !kCommon.count(it.key())) {
          throw ParseError("unknown parameter '" + it.key() + "' for " + c_.command);
        }
      }
    }
  }

  json inputs = json::object();
  json defaults = json::array();

 private:
  inline static const std::set<std::string> kCommon{"report", "csv", "config"};

  const json* find(const std::string& key) {
    used_.insert(key);
    if (c_.params.contains(key) && !c_.params[key].is_null()) return &c_.params[key];
    if (c_.file_params.contains(key) && !c_.file_params[key].is_null()) {
      return &c_.file_params[key];
    }
    return nullptr;
  }

  template <class T>
  void record(const std::string& key, const T& v, bool defaulted) {
    inputs[key] = v;
    if (defaulted) defaults.push_back(key);
  }

  [[noreturn]] static void fail(const std::string& key, const std::string& why) {
    throw ParseError("parameter '" + key + "' " + why);
  }

  static double parse_real(const std::string& key, const std::string& s) {
    try {
      std::size_t pos = 0;
      double x = std::stod(s, &pos);
      if (pos != s.size()) fail(key, "is not a number: '" + s + "'");
      return x;
    } catch (const std::logic_error&) {
      fail(key, "is not a number: '" + s + "'");
    }
  }

  const ScenarioConfig& c_;
  std::set<std::string> used_;
};

json read_json_file(const std::string& path, const std::string& what) {
  std::ifstream f(path);
  if (!f) throw ParseError(what + ": cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError(what + ": '" + path + "' is not valid JSON (" + e.what() + ")");
  }
}

template <class Fn>
auto with_context(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(what + ": " + e.what());
  } catch (const Error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

LinearFirstOrderProblem<double> default_linear(std::size_t n, double a1) {
  std::vector<MonomialSeries<double>> a(n, MonomialSeries<double>(tx_space(n)));
  if (a1 != 0.0) a[0] = MonomialSeries<double>::constant(tx_space(n), a1);
  return make_linear_problem(std::move(a), MonomialSeries<double>(tx_space(n)),
                             MonomialSeries<double>(tx_space(n)));
}

LinearFirstOrderProblem<double> load_linear(const std::string& path) {
  json j = read_json_file(path, "problem");
  auto pf = with_context("problem '" + path + "'", [&] { return problem_from_json<double>(j); });
  if (!pf.linear) throw ParseError("problem '" + path + "': field 'linear' is required");
  return *pf.linear;
}

// Problem from --problem, or the constant-a1 default at dimension dim.
LinearFirstOrderProblem<double> linear_or_default(Params& P, std::size_t dim_default) {
  auto path = P.path("problem");
  if (path) {
    auto p = load_linear(*path);
    P.inputs["dim"] = p.n();
    return p;
  }
  auto dim = P.integer("dim", dim_default, 1, 64);
  double a1 = P.real("a1", 0.5);
  return default_linear(dim, a1);
}

std::vector<double> sieve_primes(std::uint64_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<double> out;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<double>(i));
    for (std::uint64_t k = i * i; k <= bound; k += i) composite[k] = true;
  }
  return out;
}

void set_numbers(json& r, double lhs, double rhs, double residual, double stderr_) {
  r["lhs"] = lhs;
  r["rhs"] = rhs;
  r["residual"] = residual;
  r["stderr"] = stderr_;
}

RunReport cmd_zeta(Params& P) {
  double s = P.real("s", 3.0);
  if (!(s > 1.0)) throw ParseError("parameter 's' must exceed 1");
  auto bound = P.integer("primes", 100, 2, 10'000'000);
  auto cap = P.integer("cap", 40, 0, 10'000);
  auto terms = P.integer("terms", 1'000'000, 1, 1'000'000'000);
  double tol = P.real("tol", 1e-4, true);
  P.finish();
  std::vector<double> x;
  for (double p : sieve_primes(bound)) x.push_back(std::pow(p, -s));
  GeometricEval g = geometric_series_eval(x, static_cast<unsigned>(cap));
  double direct = 0.0;
  for (std::uint64_t k = terms; k >= 1; --k) direct += std::pow(static_cast<double>(k), -s);
  RunReport rep;
  json& r = rep.json;
  set_numbers(r, g.value, direct, g.value - direct, 0.0);
  r["n"] = x.size();
  rep.pass = std::fabs(g.value - direct) < tol;
  r["results"] = {{"euler_truncated", g.value},
                  {"direct_partial_sum", direct},
                  {"prime_count", x.size()},
                  {"abs_partial", g.abs_partial}};
  CsvTable t{"graded_partial_sums", {"degree", "degree_sum", "partial_sum"}, {}};
  double acc = 0.0;
  for (std::size_t d = 0; d < g.abs_by_degree.size(); ++d) {
    acc += g.abs_by_degree[d];
    t.rows.push_back({static_cast<double>(d), g.abs_by_degree[d], acc});
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

template <Coefficient C>
RunReport solve_in_mode(Params& P, const json& problem_json, const std::string& path,
                        unsigned degree, const std::optional<std::string>& out) {
  auto pf = with_context("problem '" + path + "'", [&] { return problem_from_json<C>(problem_json); });
  if (!pf.cauchy) throw ParseError("problem '" + path + "': no Cauchy problem ('f' or 'linear')");
  const CauchyProblem<C>& p = *pf.cauchy;
  if (degree < p.m) throw ParseError("parameter 'degree' must be at least m");
  auto sol = solve(p, degree);
  auto res = residual(p, sol, sol.residual_degree);
  double scale = 1.0;
  for (const auto& [a, c] : sol.series.terms()) scale = std::max(scale, to_double(abs_value(c)));
  double worst = 0.0;
  for (const auto& [a, c] : res.terms()) worst = std::max(worst, to_double(abs_value(c)));
  RunReport rep;
  json& r = rep.json;
  rep.pass = std::is_same_v<C, Rational> ? res.is_zero() : worst <= 1e-12 * scale;
  set_numbers(r, 0.0, 0.0, worst, 0.0);
  r["n"] = p.x_vars;
  r["results"] = {{"m", p.m},
                  {"degree", sol.degree},
                  {"residual_degree", sol.residual_degree},
                  {"terms", sol.series.size()},
                  {"residual_max_abs", worst},
                  {"solution", series_to_json(sol.series)}};
  if (out) {
    std::ofstream f(*out);
    if (!f) throw ParseError("parameter 'out': cannot write '" + *out + "'");
    f << series_to_json(sol.series).dump(2) << "\n";
  }
  CsvTable t{"coefficients", {"t"}, {}};
  for (std::size_t i = 1; i <= p.x_vars; ++i) t.columns.push_back("x" + std::to_string(i));
  t.columns.push_back("coefficient");
  for (const auto& [alpha, c] : sol.series.sorted_terms()) {
    std::vector<double> row;
    for (std::size_t v = 0; v <= p.x_vars; ++v) row.push_back(alpha.exponent(static_cast<VarIndex>(v)));
    row.push_back(to_double(c));
    t.rows.push_back(std::move(row));
  }
  rep.tables.push_back(std::move(t));
  (void)P;
  return rep;
}

RunReport cmd_solve(Params& P) {
  auto path = P.path("problem");
  if (!path) throw ParseError("parameter 'problem' is required");
  auto degree = static_cast<unsigned>(P.integer("degree", 8, 0, 200));
  auto mode = P.choice("mode", "double", {"double", "rational"});
  auto out = P.path("out");
  P.finish();
  json j = read_json_file(*path, "problem");
  return mode == "rational" ? solve_in_mode<Rational>(P, j, *path, degree, out)
                            : solve_in_mode<double>(P, j, *path, degree, out);
}

RunReport cmd_radius(Params& P) {
  auto path = P.path("problem");
  if (!path) throw ParseError("parameter 'problem' is required");
  double pnorm = P.real("p", 1.0);
  if (!(pnorm >= 1.0)) throw ParseError("parameter 'p' must be at least 1");
  auto wpath = P.path("witness");
  auto cap = static_cast<unsigned>(P.integer("cap", 12, 0, 64));
  double bound = P.real("bound", 1e12, true);
  P.finish();
  auto p = load_linear(*path);
  PointOracle witness =
      wpath ? with_context("witness '" + *wpath + "'",
                           [&] { return point_from_json(read_json_file(*wpath, "witness")); })
            : PointOracle::from_rule(SequenceRule::geometric(1.0, 2.0), pnorm, 0);
  auto rr = majorant_radius(p, pnorm, witness, cap, bound);
  RunReport rep;
  json& r = rep.json;
  rep.pass = rr.r.has_value();
  const auto& cert = rr.certificate;
  double S = cert.partial_sums.empty() ? 0.0 : cert.partial_sums.back();
  set_numbers(r, S, bound, 0.0, 0.0);
  r["n"] = p.n();
  r["results"] = {{"r", rr.r ? json(*rr.r) : json(nullptr)},
                  {"c0", kRadiusScale},
                  {"S", S},
                  {"sums_bounded", cert.sums_bounded},
                  {"witness_ok", cert.witness_ok},
                  {"witness_sum", cert.witness_check.checked_sum},
                  {"witness_tail_upper", cert.witness_check.tail_upper},
                  {"witness", point_to_json(witness)}};
  CsvTable t{"graded_partial_sums", {"degree", "partial_sum"}, {}};
  for (std::size_t d = 0; d < cert.partial_sums.size(); ++d) {
    t.rows.push_back({static_cast<double>(d), cert.partial_sums[d]});
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

RunReport cmd_topology(Params& P) {
  auto trials = P.integer("trials", 200, 1, 100'000'000);
  auto seed = P.seed();
  P.finish();
  auto props = run_topology_properties(trials, seed);
  RunReport rep;
  json list = json::array();
  CsvTable t{"properties", {"index", "trials", "failures"}, {}};
  std::size_t failures = 0;
  for (std::size_t i = 0; i < props.size(); ++i) {
    list.push_back({{"name", props[i].name}, {"trials", props[i].trials}, {"failures", props[i].failures}});
    t.rows.push_back({static_cast<double>(i), static_cast<double>(props[i].trials),
                      static_cast<double>(props[i].failures)});
    failures += props[i].failures;
  }
  rep.pass = failures == 0;
  set_numbers(rep.json, 0.0, 0.0, static_cast<double>(failures), 0.0);
  rep.json["seed"] = seed;
  rep.json["rng"] = "mt19937_64";
  rep.json["samples"] = trials;
  rep.json["results"] = {{"properties", list}};
  rep.tables.push_back(std::move(t));
  return rep;
}

GeometricPattern read_pattern(Params& P) {
  GeometricPattern g;
  g.q = P.real("q", g.q);
  g.t_share = P.real("t-share", g.t_share);
  try {
    g.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("weight pattern: ") + e.what());
  }
  return g;
}

json weights_json(const WeightScheme& w, std::size_t n) {
  json A = json::array();
  for (double a : w.A_vector(n)) A.push_back(a);
  return {{"q", w.pattern.q},   {"t_share", w.pattern.t_share}, {"rho0", w.rho0},
          {"rho1", w.rho1},     {"bound_sum", w.bound_sum},     {"A", A},
          {"sum_A2", w.sum_A2()}};
}

RunReport cmd_weights(Params& P) {
  auto p = linear_or_default(P, 1);
  auto pattern = read_pattern(P);
  auto rows = P.integer("rows", std::max<std::size_t>(p.n(), 8), 1, 10'000);
  P.finish();
  RunReport rep;
  json& r = rep.json;
  r["n"] = p.n();
  try {
    WeightScheme w = build_weights(p, pattern);
    auto inv = check_weight_invariants(w);
    rep.pass = inv.ok;
    set_numbers(r, inv.sqrt_sum, 1.0, inv.sqrt_sum - 1.0, 0.0);
    r["results"] = weights_json(w, p.n());
    r["results"]["invariants"] = {{"sqrt_sum", inv.sqrt_sum},
                                  {"sqrt_sum_error", inv.sqrt_sum_error},
                                  {"sum_A2", inv.sum_A2},
                                  {"A0_ok", inv.A0_ok},
                                  {"rho_ok", inv.rho_ok}};
    CsvTable t{"weights", {"i", "t_i", "s_i", "A_i"}, {}};
    for (std::size_t i = 0; i < rows; ++i) {
      t.rows.push_back({static_cast<double>(i), w.t(i), i ? w.s(i) : std::nan(""), w.A(i)});
    }
    rep.tables.push_back(std::move(t));
  } catch (const NoSchemeError& e) {
    rep.pass = false;
    set_numbers(r, e.best_sum, 0.5, e.best_sum - 0.5, 0.0);
    r["results"] = {{"error", e.what()}, {"best_sum", e.best_sum}};
  }
  return rep;
}

VectorField pick_field(const std::string& name, std::size_t d) {
  if (name == "one") return constant_field(std::vector<double>(d, 1.0));
  if (name == "identity") {
    std::vector<double> M(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) M[i * d + i] = 1.0;
    return linear_field(M, std::vector<double>(d, 0.0));
  }
  std::vector<MonomialSeries<double>> comps;
  for (std::size_t i = 0; i < d; ++i) {
    MonomialSeries<double> c(tx_space(d - 1));
    c.add_term(MultiIndex::unit(static_cast<VarIndex>(i), 2), 1.0);
    comps.push_back(std::move(c));
  }
  return polynomial_field(comps);
}

RunReport cmd_divergence(Params& P) {
  auto domain = P.choice("domain", "H", {"H", "box"});
  auto field = P.choice("field", domain == "H" ? "holmgren" : "one",
                        {"holmgren", "one", "identity", "square"});
  bool quad = P.flag("quadrature", false);
  auto samples = P.integer("samples", 1'000'000, 2, 1'000'000'000);
  auto seed = P.seed();
  double t = P.real("t", 1.0, true);
  double tol = P.real("tol", 1e-6, true);
  double sigmas = P.real("sigmas", 3.0, true);
  RunReport rep;
  json& r = rep.json;
  json results = json::object();
  DivergenceResult d;
  if (domain == "box") {
    if (field == "holmgren") throw ParseError("parameter 'field': the Holmgren field needs domain H");
    auto dim = P.integer("dim", 1, 1, 4);
    double lo = P.real("lower", 0.0), hi = P.real("upper", 1.0);
    if (!(lo < hi)) throw ParseError("parameter 'upper' must exceed 'lower'");
    P.finish();
    GaussianSampler s(std::vector<double>(dim, 1.0), t, seed);
    Box box{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
    d = divergence_residual(pick_field(field, dim), box, s, quad ? Method::Quadrature : Method::MonteCarlo,
                            samples);
    r["n"] = dim;
  } else {
    auto p = linear_or_default(P, 2);
    double lambda = P.real("lambda", 0.25, true);
    auto cap = static_cast<unsigned>(P.integer("cap", 16, 0, 64));
    auto pattern = read_pattern(P);
    P.finish();
    const std::size_t n = p.n();
    if (quad && n > 3) throw ParseError("parameter 'dim': quadrature supports at most 3");
    WeightScheme w = build_weights(p, pattern);
    GaussianSampler s(w.A_vector(n), t, seed);
    Region H{n, lambda, Region::Kind::H};
    VectorField F;
    if (field == "holmgren") {
      HolmgrenField pf = holmgren_field(w, change_of_variables(p, cap).a_tilde);
      F = pf.field();
      auto fb = check_F_bounds(pf, H, 2000, seed);
      results["F_bounds"] = {{"bstar_sup", fb.bstar_sup},
                             {"H_sup", fb.H_sup},
                             {"trace_norm_integral", fb.trace_norm_integral},
                             {"trace_norm_stderr", fb.trace_norm_stderr},
                             {"finite", fb.finite}};
    } else {
      F = pick_field(field, n + 1);
    }
    results["weights"] = weights_json(w, n);
    d = divergence_residual(F, H, s, quad ? Method::Quadrature : Method::MonteCarlo, samples);
    r["n"] = n;
  }
  set_numbers(r, d.lhs, d.rhs, d.residual, d.error_bar);
  r["method"] = to_string(d.method);
  if (!quad) {
    r["samples"] = samples;
    r["seed"] = seed;
    r["rng"] = std::string(Xoshiro256::name);
    results["rejected"] = d.rejected;
  }
  rep.pass = quad ? std::fabs(d.residual) < tol : std::fabs(d.residual) < sigmas * d.error_bar;
  r["results"] = results;
  return rep;
}

MonomialSeries<double> load_series(const std::string& path, std::size_t n, const std::string& what) {
  json j = read_json_file(path, what);
  auto s = with_context(what + " '" + path + "'", [&] { return series_from_json<double>(j); });
  with_context(what + " '" + path + "'", [&] {
    s.set_space(tx_space(n));
    return 0;
  });
  return s;
}

MonomialSeries<double> paraboloid_field(std::size_t n) {
  MonomialSeries<double> U(tx_space(n));
  U.add_term(MultiIndex::unit(0), 1.0);
  for (std::size_t i = 1; i <= n; ++i) U.add_term(MultiIndex::unit(static_cast<VarIndex>(i), 2), -1.0);
  return U;
}

RunReport cmd_green(Params& P) {
  auto path = P.path("problem");
  LinearFirstOrderProblem<double> p;
  if (path) {
    p = load_linear(*path);
  } else {
    auto dim = P.integer("dim", 1, 1, 64);
    p = default_linear(dim, P.real("a1", 0.0));
  }
  const std::size_t n = p.n();
  double lambda = P.real("lambda", 0.25, true);
  bool quad = P.flag("quadrature", false);
  auto samples = P.integer("samples", 1'000'000, 2, 1'000'000'000);
  auto seed = P.seed();
  auto cap = static_cast<unsigned>(P.integer("cap", 12, 0, 64));
  double tol = P.real("tol", 1e-6, true);
  double factor_tol = P.real("factor-tol", 1e-8, true);
  double sigmas = P.real("sigmas", 3.0, true);
  auto wpath = P.path("W");
  auto upath = P.path("U");
  auto pattern = read_pattern(P);
  P.finish();
  if (quad && n > 3) throw ParseError("parameter 'dim': quadrature supports at most 3");
  std::vector<MonomialSeries<double>> Ws;
  if (wpath) {
    Ws.push_back(load_series(*wpath, n, "W"));
  } else {
    Ws.push_back(MonomialSeries<double>::constant(tx_space(n), 1.0));
    Ws.push_back(MonomialSeries<double>::variable(tx_space(n), 1));
  }
  MonomialSeries<double> U = upath ? load_series(*upath, n, "U") : paraboloid_field(n);
  WeightScheme w = build_weights(p, pattern);
  auto tc = change_of_variables(p, cap);
  RunReport rep;
  json& r = rep.json;
  json rows = json::array();
  rep.pass = true;
  double worst = -1.0;
  for (const auto& W : Ws) {
    GreenResult g = with_context("green identity", [&] {
      return green_residual(W, U, tc, w, lambda, n, quad ? Method::Quadrature : Method::MonteCarlo,
                            samples, seed);
    });
    bool ok = quad ? std::fabs(g.residual) < tol : std::fabs(g.residual) < sigmas * g.error_bar;
    bool factor_ok = std::fabs(g.surface_factor - g.surface_factor_expected) <
                     factor_tol * std::max(1.0, std::fabs(g.surface_factor_expected));
    rep.pass = rep.pass && ok && factor_ok;
    rows.push_back({{"W", series_to_json(W)},
                    {"lhs", g.lhs},
                    {"rhs", g.rhs},
                    {"residual", g.residual},
                    {"stderr", g.error_bar},
                    {"boundary_factor", g.boundary_factor},
                    {"cubic_lhs", g.cubic_lhs},
                    {"cubic_rhs", g.cubic_rhs},
                    {"cubic_residual", g.cubic_residual},
                    {"surface_factor", g.surface_factor},
                    {"surface_factor_expected", g.surface_factor_expected},
                    {"pass", ok && factor_ok}});
    if (std::fabs(g.residual) > worst) {
      worst = std::fabs(g.residual);
      set_numbers(r, g.lhs, g.rhs, g.residual, g.error_bar);
    }
  }
  r["n"] = n;
  r["method"] = quad ? "quadrature" : "mc";
  if (!quad) {
    r["samples"] = samples;
    r["seed"] = seed;
    r["rng"] = std::string(Xoshiro256::name);
  }
  r["results"] = {{"cases", rows}, {"U", series_to_json(U)}, {"weights", weights_json(w, n)}};
  return rep;
}

RunReport cmd_holmgren(Params& P) {
  auto p = linear_or_default(P, 1);
  const std::size_t n = p.n();
  HolmgrenOptions o;
  o.lambda = P.real("lambda", 0.1, true);
  auto max_moment = P.integer("max-moment", 2, 0, 32);
  o.solver_degree = static_cast<unsigned>(P.integer("degree", 8, 1, 64));
  o.cap = static_cast<unsigned>(P.integer("cap", 12, 0, 64));
  bool user = P.flag("user-field", false);
  auto upath = P.path("U");
  o.weighting = parse_weighting(P.choice("weighting", "gaussian", {"gaussian", "cubic"}));
  o.pattern = read_pattern(P);
  double zero_tol = P.real("zero-tol", 1e-12, true);
  double match_tol = P.real("tol", 1e-6, true);
  P.finish();
  if (n > 3) throw ParseError("parameter 'dim': the demo integrates by quadrature, n <= 3");
  if (upath) {
    o.user_U = load_series(*upath, n, "U");
  } else if (user) {
    o.user_U = paraboloid_field(n);
  }
  for (const auto& a : enumerate_multiindices(n, static_cast<unsigned>(max_moment))) {
    o.degrees.push_back(a);
  }
  HolmgrenReport h = with_context("holmgren demo", [&] { return holmgren_moment_demo(p, o); });
  RunReport rep;
  json& r = rep.json;
  json rows = json::array();
  CsvTable t{"moments", {}, {}};
  for (std::size_t i = 1; i <= n; ++i) t.columns.push_back("k" + std::to_string(i));
  for (const char* c : {"moment_direct", "moment_green", "difference", "adjoint_defect", "w_terms"}) {
    t.columns.push_back(c);
  }
  double max_green = 0.0;
  for (const auto& row : h.rows) {
    json k = json::array();
    std::vector<double> cells;
    for (std::size_t i = 1; i <= n; ++i) {
      k.push_back(row.k.exponent(static_cast<VarIndex>(i)));
      cells.push_back(row.k.exponent(static_cast<VarIndex>(i)));
    }
    rows.push_back({{"k", k},
                    {"moment_direct", row.moment_direct},
                    {"moment_green", row.moment_green},
                    {"green_lhs", row.green_lhs},
                    {"difference", row.difference},
                    {"adjoint_defect", row.adjoint_defect},
                    {"w_terms", row.w_terms}});
    cells.insert(cells.end(), {row.moment_direct, row.moment_green, row.difference,
                               row.adjoint_defect, static_cast<double>(row.w_terms)});
    t.rows.push_back(std::move(cells));
    max_green = std::max(max_green, std::fabs(row.moment_green));
  }
  rep.tables.push_back(std::move(t));
  if (h.zero_solution) {
    rep.pass = h.max_abs_moment <= zero_tol && max_green <= zero_tol;
  } else {
    rep.pass = h.max_difference <= match_tol;
  }
  double lhs = h.rows.empty() ? 0.0 : h.rows.front().moment_green;
  double rhs = h.rows.empty() ? 0.0 : h.rows.front().moment_direct;
  set_numbers(r, lhs, rhs, h.max_difference, 0.0);
  r["n"] = n;
  r["results"] = {{"zero_solution", h.zero_solution},
                  {"boundary_factor", h.boundary_factor},
                  {"max_abs_moment", h.max_abs_moment},
                  {"max_difference", h.max_difference},
                  {"weighting", to_string(o.weighting)},
                  {"weights", weights_json(h.weights, n)},
                  {"moments", rows}};
  return rep;
}

}  // namespace

RunReport run(const ScenarioConfig& config) {
  auto start = std::chrono::steady_clock::now();
  if (!config.params.is_object() || !config.file_params.is_object()) {
    throw ParseError("configuration must be a JSON object");
  }
  Params P(config);
  RunReport rep;
  const std::string& c = config.command;
  if (c == "zeta") {
    rep = cmd_zeta(P);
  } else if (c == "solve") {
    rep = cmd_solve(P);
  } else if (c == "radius") {
    rep = cmd_radius(P);
  } else if (c == "topology-check") {
    rep = cmd_topology(P);
  } else if (c == "weights") {
    rep = cmd_weights(P);
  } else if (c == "divergence-check") {
    rep = cmd_divergence(P);
  } else if (c == "green-check") {
    rep = cmd_green(P);
  } else if (c == "holmgren-demo") {
    rep = cmd_holmgren(P);
  } else {
    throw ParseError("unknown command '" + c + "'");
  }
  json& r = rep.json;
  r["op"] = c;
  r["inputs"] = P.inputs;
  r["defaults"] = P.defaults;
  for (const char* k : {"seed", "rng", "samples", "n"}) {
    if (!r.contains(k)) r[k] = nullptr;
  }
  r["pass"] = rep.pass;
  r["versions"] = {{"ckh", library_version()},
                   {"compiler", __VERSION__},
                   {"boost", BOOST_LIB_VERSION},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  r["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace ckh
