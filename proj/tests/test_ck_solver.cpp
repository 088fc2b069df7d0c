#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ck_random.hpp"
#include "ckh/ck/linear.hpp"
#include "ckh/ck/oscillator.hpp"
#include "ckh/ck/problem_json.hpp"
#include "ckh/error.hpp"

using namespace ckh;
using RS = MonomialSeries<Rational>;

namespace {

MultiIndex tx(unsigned t, std::initializer_list<MultiIndex::Entry> x = {}) {
  return MultiIndex(x) + MultiIndex::unit(0, t);
}

Rational factorial(unsigned k) {
  Rational r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

CauchyProblem<Rational> exponential() {
  VariableSpace sp = cauchy_space(1, 1);
  RS f = RS::variable(sp, 2);  // u
  return make_cauchy_problem<Rational>(1, 1, f, {RS::constant(tx_space(1), 1)});
}

CauchyProblem<Rational> transport(std::size_t n, const std::vector<Rational>& a, RS phi) {
  VariableSpace sp = cauchy_space(1, n);
  RS f(sp);
  for (std::size_t i = 0; i < a.size(); ++i) {
    f.add_term(MultiIndex::unit(static_cast<VarIndex>(n + 2 + i)), a[i]);
  }
  return make_cauchy_problem<Rational>(1, n, f, {phi});
}

}  // namespace

TEST_CASE("jet index and variable space") {
  auto w = make_w_index(2, 3);
  CHECK(w.size() == 13);
  CHECK(w[0].j == 0);
  CHECK(w[0].beta == MultiIndex::unit(1));
  CHECK(w[3].j == 1);
  CHECK(w[3].beta.is_zero());
  for (const auto& wi : w) {
    CHECK(wi.j < 2);
    CHECK(wi.beta.degree() + wi.j >= 1);
    CHECK(wi.beta.degree() + wi.j <= 2);
  }
  auto sp = cauchy_space(1, 2);
  CHECK(sp.names() == std::vector<std::string>{"t", "x1", "x2", "u", "D[x1]", "D[x2]"});
  CHECK(w_name({MultiIndex::unit(2, 2), 1}) == "D[t,x2^2]");
}

TEST_CASE("derived initial values") {
  auto tx1 = tx_space(1);
  VariableSpace sp = cauchy_space(1, 1);
  auto p = make_cauchy_problem<Rational>(1, 1, RS(sp), {RS::variable(tx1, 1)});
  auto jet = derived_initial_values(p);
  CHECK(jet.u0 == 0);
  CHECK(jet.w0.at(0) == 1);

  auto p2 = make_cauchy_problem<Rational>(2, 1, RS(cauchy_space(2, 1)),
                                          {RS::constant(tx1, 1), RS::variable(tx1, 1)});
  auto j2 = derived_initial_values(p2);
  CHECK(j2.u0 == 1);
  // order: D[x1], D[t], D[x1^2], D[t,x1]
  CHECK(j2.w0.at(0) == 0);
  CHECK(j2.w0.at(1) == 0);
  CHECK(j2.w0.at(3) == 1);

  RS sq(tx1);
  sq.add_term(MultiIndex::unit(1, 2), 1);
  auto p3 = make_cauchy_problem<Rational>(2, 1, RS(cauchy_space(2, 1)), {sq, RS(tx1)});
  auto j3 = derived_initial_values(p3);
  CHECK(j3.w0.at(0) == 0);
  CHECK(j3.w0.at(2) == 2);
}

TEST_CASE("solve: closed-form examples in exact arithmetic") {
  auto p = exponential();
  auto s = solve(p, 8);
  CHECK(s.series.size() == 9);
  for (unsigned k = 0; k <= 8; ++k) CHECK(s.series.coeff(tx(k)) == 1 / factorial(k));
  CHECK(residual(p, s, 7).is_zero());
  CHECK(s.residual_degree == 7);

  RS sq(tx_space(1));
  sq.add_term(MultiIndex::unit(1, 2), 1);
  auto tr = transport(1, {1}, sq);
  auto st = solve(tr, 4);
  CHECK(st.series.size() == 3);
  CHECK(st.series.coeff(tx(0, {{1, 2}})) == 1);
  CHECK(st.series.coeff(tx(1, {{1, 1}})) == 2);
  CHECK(st.series.coeff(tx(2)) == 1);

  // x1 d_x1 u with u(0) = x1: u = x1 e^t
  VariableSpace sp = cauchy_space(1, 1);
  RS f(sp);
  f.add_term(MultiIndex::unit(1) + MultiIndex::unit(3), 1);
  auto px = make_cauchy_problem<Rational>(1, 1, f, {RS::variable(tx_space(1), 1)});
  auto sx = solve(px, 6);
  CHECK(sx.series.size() == 6);
  for (unsigned k = 0; k <= 5; ++k) CHECK(sx.series.coeff(tx(k, {{1, 1}})) == 1 / factorial(k));
  CHECK(residual(px, sx, 5).is_zero());

  // sum_i 2^-i d_xi u, u(0) = x1, n = 8: u = x1 + t/2
  std::vector<Rational> a;
  for (int i = 1; i <= 8; ++i) a.push_back(Rational(1, 1 << i));
  auto p8 = transport(8, a, RS::variable(tx_space(8), 1));
  auto s8 = solve(p8, 3);
  CHECK(s8.series.size() == 2);
  CHECK(s8.series.coeff(tx(0, {{1, 1}})) == 1);
  CHECK(s8.series.coeff(tx(1)) == Rational(1, 2));
}

TEST_CASE("residual picks up a perturbation at the matching degree") {
  auto p = exponential();
  auto s = solve(p, 8);
  CHECK(residual(p, s, 8).size() == 1);  // only the t^8 tail term
  CHECK(residual(p, s, 8).coeff(tx(8)) == -1 / factorial(8));
  s.series.add_term(tx(3), 1);
  auto r = residual(p, s, 6);
  // d_t(t^3) - t^3 = 3t^2 - t^3
  CHECK(r.size() == 2);
  CHECK(r.coeff(tx(2)) == 3);
  CHECK(r.coeff(tx(3)) == -1);
}

TEST_CASE("random polynomial problems: residual vanishing and initial data") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = testing::random_problem(rng);
    unsigned N = 6;
    auto s = solve(p, N);
    CHECK(residual(p, s, N - p.m).is_zero());
    CHECK(testing::initial_data_consistent(p, s));
    CHECK(solve(p, N).series == s.series);
  }
}

TEST_CASE("univariate Taylor recursion oracle") {
  // d_t u = a(x) u_x + b(x) u on dense coefficient arrays.
  std::vector<double> a{0.5, -1.0, 0.25}, b{1.0, 0.0, -0.5}, phi{1.0, 2.0, 0.0, -1.0};
  const unsigned N = 7;
  std::vector<std::vector<double>> layers{phi};
  layers[0].resize(N + 1, 0.0);
  for (unsigned k = 0; k < N; ++k) {
    const auto& u = layers[k];
    std::vector<double> next(N + 1, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (i >= 1 && i - 1 + j <= N) next[i - 1 + j] += a[j] * i * u[i];
      }
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (i + j <= N) next[i + j] += b[j] * u[i];
      }
    }
    for (double& v : next) v /= (k + 1);
    layers.push_back(next);
  }
  auto tx1 = tx_space(1);
  auto dense = [&](const std::vector<double>& c) {
    MonomialSeries<double> s(tx1);
    for (unsigned k = 0; k < c.size(); ++k) s.add_term(MultiIndex::unit(1, k), c[k]);
    return s;
  };
  auto lp = make_linear_problem<double>({dense(a)}, dense(b), dense(phi));
  auto sol = solve(to_cauchy(lp), N);
  for (unsigned k = 0; k <= N; ++k) {
    for (unsigned i = 0; i + k <= N; ++i) {
      double want = layers[k][i];
      double got = sol.series.coeff(tx(k, {{1, i}}));
      CHECK(got == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("build_G") {
  auto tx1 = tx_space(1);
  auto one = RS::constant(tx1, 1);
  auto G1 = build_G(make_linear_problem<Rational>({one}, RS(tx1), RS(tx1)));
  CHECK(G1.size() == 1);
  CHECK(G1.coeff(MultiIndex::unit(3)) == 1);  // w1
  auto G2 = build_G(make_linear_problem<Rational>({RS(tx1)}, one, RS(tx1)));
  CHECK(G2.size() == 1);
  CHECK(G2.coeff(MultiIndex::unit(2)) == 1);  // w0
  auto G3 = build_G(make_linear_problem<Rational>({RS::variable(tx1, 1)}, RS::constant(tx1, 2), RS(tx1)));
  CHECK(G3.coeff(MultiIndex::unit(1) + MultiIndex::unit(3)) == 1);
  CHECK(G3.coeff(MultiIndex::unit(2)) == 2);
  CHECK(g_space(1).names() == std::vector<std::string>{"t", "x1", "w0", "w1"});
}

TEST_CASE("majorant radius contract") {
  const std::size_t n = 8;
  auto txn = tx_space(n);
  std::vector<RS> a;
  for (std::size_t i = 1; i <= n; ++i) a.push_back(RS::constant(txn, Rational(1, 1 << i)));
  auto witness = PointOracle::from_rule(SequenceRule::geometric(1.0, 2.0), 1.0, 0);
  std::vector<double> radii;
  for (int k = 1; k <= 3; ++k) {
    RS phi(txn);
    phi.add_term(MultiIndex::unit(1, k), 1);
    auto lp = make_linear_problem<Rational>(a, RS(txn), phi);
    auto res = majorant_radius(lp, 1.0, witness, 4);
    REQUIRE(res.r.has_value());
    radii.push_back(*res.r);
  }
  CHECK(radii[0] > 0.0);
  CHECK(radii[0] == radii[1]);
  CHECK(radii[1] == radii[2]);
  // S = sum 2^-i * 2^{n+1+i} = n 2^{n+1}
  CHECK(radii[0] == doctest::Approx(0.5 / (1.0 + n * std::pow(2.0, n + 1))));

  auto zero = make_linear_problem<Rational>(std::vector<RS>(n, RS(txn)), RS(txn), RS(txn));
  auto rz = majorant_radius(zero, 1.0, witness, 4);
  CHECK(rz.r == std::optional<double>(kRadiusScale));

  auto ones = PointOracle::from_rule(SequenceRule::constant(1.0), 1.0, 0);
  CHECK_FALSE(majorant_radius(zero, 1.0, ones, 4).r.has_value());
}

TEST_CASE("oscillator example") {
  auto p = oscillator_problem<Rational>(SequenceRule::power(1.0, -3.0), 4);
  CHECK(p.f.size() == 7);
  CHECK(p.m == 2);
  auto p0 = oscillator_problem<Rational>(SequenceRule::zero(), 4);
  CHECK(p0.f.size() == 1);
  p.phi[0] = RS::variable(tx_space(4), 2);
  auto s = solve(p, 4);
  CHECK(residual(p, s, 2).is_zero());
  CHECK_THROWS_AS(oscillator_problem<double>(SequenceRule::zero(), 1), PreconditionError);
}

TEST_CASE("summability of the oscillator coefficients") {
  auto a = SequenceRule::power(1.0, -3.0);
  auto k = SequenceRule::power(1.0, 1.0);
  auto r = check_summability(a, k, k, 1000000);
  double target = 3.0 * (std::numbers::pi * std::numbers::pi / 6.0 - 1.0);
  CHECK(r.converged);
  CHECK(std::fabs(r.estimate() - target) < 1e-6);
  CHECK(r.partial < target);
  CHECK(r.partial + r.tail_upper >= target);
  auto z = check_summability(SequenceRule::zero(), k, k, 100);
  CHECK(z.partial == 0.0);
  CHECK(z.converged);
  auto h = check_summability(SequenceRule::power(1.0, -1.0), SequenceRule::constant(1.0),
                             SequenceRule::constant(1.0), 1000);
  CHECK_FALSE(h.converged);
}

TEST_CASE("errors and budgets") {
  auto tx1 = tx_space(1);
  CHECK_THROWS_AS(make_cauchy_problem<Rational>(0, 1, RS(cauchy_space(1, 1)), {}),
                  PreconditionError);
  auto p = exponential();
  SolveOptions tight;
  tight.term_limit = 3;
  CHECK_THROWS_AS(solve(p, 8, tight), BudgetError);
  CHECK_THROWS_AS(solve(p, 0), PreconditionError);
  // capped f composed around a nonzero jet without centering
  RS capped(cauchy_space(1, 1), 3);
  capped.add_term(MultiIndex::unit(2, 2), 1);
  auto pc = make_cauchy_problem<Rational>(1, 1, capped, {RS::constant(tx1, 1)});
  CHECK_THROWS_AS(solve(pc, 4), FormalConvergenceError);
  pc.f_centered = true;
  CHECK_NOTHROW(solve(pc, 4));
}

TEST_CASE("problem JSON round trip") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    ProblemFile<Rational> pf;
    pf.cauchy = testing::random_problem(rng);
    auto back = problem_from_json<Rational>(nlohmann::json::parse(problem_to_json(pf).dump()));
    REQUIRE(back.cauchy);
    CHECK(back.cauchy->f == pf.cauchy->f);
    CHECK(back.cauchy->phi == pf.cauchy->phi);
    CHECK(back.cauchy->m == pf.cauchy->m);
  }
  auto j = nlohmann::json::parse(R"({"linear":{"a":[{"space":["t","x1"],"terms":[{"alpha":[],"c":1}]}],
      "phi":{"space":["t","x1"],"terms":[{"alpha":[[1,2]],"c":1}]}}})");
  auto pf = problem_from_json<Rational>(j);
  REQUIRE(pf.cauchy);
  auto s = solve(*pf.cauchy, 4);
  CHECK(s.series.coeff(tx(2)) == 1);
  CHECK_THROWS_AS(problem_from_json<double>(nlohmann::json::parse(R"({"m":1})")), ParseError);
}
