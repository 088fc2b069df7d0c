#include <doctest.h>

#include <cmath>
#include <random>

#include "ckh/error.hpp"
#include "ckh/series/convergence.hpp"
#include "ckh/series/monomial_series.hpp"
#include "ckh/series/series_json.hpp"

using namespace ckh;
using RS = MonomialSeries<Rational>;
using DS = MonomialSeries<double>;

namespace {

MultiIndex mi(std::initializer_list<MultiIndex::Entry> e) { return MultiIndex(e); }

// Dense univariate polynomial product, the oracle for x1-only computations.
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b,
                             std::size_t cap) {
  std::vector<double> r(cap + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= cap; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= cap; ++j) r[i + j] += a[i] * b[j];
  return r;
}

template <class S>
S univariate(const std::vector<double>& c, std::size_t n = 1) {
  S s(tx_space(n));
  for (std::size_t k = 0; k < c.size(); ++k) {
    using C = std::decay_t<decltype(s.coeff(MultiIndex{}))>;
    s.add_term(MultiIndex::unit(1, static_cast<Exponent>(k)), C(c[k]));
  }
  return s;
}

RS random_series(std::mt19937_64& rng, std::size_t n, unsigned deg, int terms) {
  RS s(tx_space(n));
  std::uniform_int_distribution<int> var(1, static_cast<int>(n));
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> d(0, static_cast<int>(deg));
  for (int k = 0; k < terms; ++k) {
    std::vector<MultiIndex::Entry> e;
    int total = d(rng);
    for (int j = 0; j < total; ++j) e.emplace_back(static_cast<VarIndex>(var(rng)), 1);
    s.add_term(MultiIndex(e), Rational(coef(rng), 1 + std::abs(coef(rng))));
  }
  return s;
}

}  // namespace

TEST_CASE("multi-index canonical form and graded-lex order") {
  MultiIndex a{{2, 1}, {1, 2}, {3, 0}, {1, 1}};
  REQUIRE(a.entries().size() == 2);
  CHECK(a.exponent(1) == 3);
  CHECK(a.exponent(3) == 0);
  CHECK(a.degree() == 4);
  CHECK(mi({{1, 2}}) < mi({{1, 1}, {2, 1}}));
  CHECK(mi({{1, 1}, {2, 1}}) < mi({{2, 2}}));
  CHECK(mi({{5, 1}}) < mi({{1, 2}}));
  CHECK(mi({{1, 3}}).factorial() == 6);
}

TEST_CASE("enumerate_multiindices") {
  auto e = enumerate_multiindices(2, 2);
  REQUIRE(e.size() == 6);
  CHECK(e[0].is_zero());
  CHECK(e[1] == mi({{1, 1}}));
  CHECK(e[2] == mi({{2, 1}}));
  CHECK(e[3] == mi({{1, 2}}));
  CHECK(e[4] == mi({{1, 1}, {2, 1}}));
  CHECK(e[5] == mi({{2, 2}}));
  auto u = enumerate_multiindices(1, 3);
  REQUIRE(u.size() == 4);
  CHECK(u[3] == mi({{1, 3}}));
  CHECK(enumerate_multiindices(3, 0).size() == 1);
  CHECK(enumerate_multiindices(5, 4).size() == checked_binomial(9, 5));
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1] < e[i]);
  CHECK_THROWS_AS(enumerate_multiindices(200, 200), SizeError);
  CHECK_THROWS_AS(checked_binomial(400, 200), SizeError);
}

TEST_CASE("mul examples") {
  auto sp = tx_space(2);
  RS a = add(RS::constant(sp, 1), RS::variable(sp, 1));
  RS b = add(RS::constant(sp, 1), RS::variable(sp, 2));
  RS p = mul(a, b, 2);
  CHECK(p.size() == 4);
  CHECK(p.coeff(mi({{1, 1}, {2, 1}})) == 1);
  CHECK_FALSE(p.cap().has_value());
  CHECK(mul(a, RS(sp), 3).is_zero());

  RS g = univariate<RS>({1, 1, 1, 1});
  RS sq = mul(g, g, 3);
  // oracle: dense convolution
  auto dense = poly_mul({1, 1, 1, 1}, {1, 1, 1, 1}, 3);
  for (unsigned k = 0; k <= 3; ++k) CHECK(sq.coeff(MultiIndex::unit(1, k)) == Rational(dense[k]));
  CHECK(sq.cap() == Cap(3));

  RS other(VariableSpace({"y"}));
  other.add_term(MultiIndex::unit(0), 1);
  CHECK_THROWS_AS(mul(a, other, 2), SpaceError);
}

TEST_CASE("partial derivatives") {
  auto sp = tx_space(2);
  RS f(sp);
  f.add_term(mi({{1, 2}, {2, 1}}), 1);
  RS d = partial_deriv(f, 1);
  CHECK(d.size() == 1);
  CHECK(d.coeff(mi({{1, 1}, {2, 1}})) == 2);
  RS g(sp);
  g.add_term(mi({{1, 2}}), 1);
  CHECK(partial_deriv(g, 2).is_zero());
  RS h(sp);
  h.add_term(mi({{1, 3}}), 3);
  h.add_term(mi({{1, 1}}), -1);
  RS dh = partial_deriv(h, 1);
  CHECK(dh.coeff(mi({{1, 2}})) == 9);
  CHECK(dh.coeff(MultiIndex{}) == -1);
  RS capped(sp, 4);
  capped.add_term(mi({{1, 4}}), 1);
  CHECK(partial_deriv(capped, 1).cap() == Cap(3));
}

TEST_CASE("substitute examples") {
  VariableSpace sp({"t", "x1", "x2", "y"});
  RS f(sp);
  f.add_term(MultiIndex::unit(3, 2), 1);
  RS s = add(RS::variable(sp, 1), RS::variable(sp, 2));
  RS r = substitute(f, {{3, s}}, 2);
  CHECK(r.size() == 3);
  CHECK(r.coeff(mi({{1, 1}, {2, 1}})) == 2);
  CHECK(r.coeff(mi({{2, 2}})) == 1);

  RS id = RS::variable(sp, 3);
  RS five = substitute(id, {{3, RS::constant(sp, 5)}}, 0);
  CHECK(five.size() == 1);
  CHECK(five.coeff(MultiIndex{}) == 5);

  // f = sum_k y^k to cap 4, y -> x1 + x1^2; oracle by dense expansion.
  RS geo(sp, 4);
  for (unsigned k = 0; k <= 4; ++k) geo.add_term(MultiIndex::unit(3, k), 1);
  RS inner(sp);
  inner.add_term(MultiIndex::unit(1), 1);
  inner.add_term(MultiIndex::unit(1, 2), 1);
  RS comp = substitute(geo, {{3, inner}}, 3);
  std::vector<double> acc(4, 0.0), power{1.0};
  for (int k = 0; k <= 4; ++k) {
    for (std::size_t i = 0; i < power.size() && i <= 3; ++i) acc[i] += power[i];
    power = poly_mul(power, {0, 1, 1}, 3);
  }
  for (unsigned k = 0; k <= 3; ++k) CHECK(comp.coeff(MultiIndex::unit(1, k)) == Rational(acc[k]));
  CHECK(acc == std::vector<double>{1, 1, 2, 3});
  CHECK(comp.cap() == Cap(3));

  // Capped f composed with a unit-constant series is refused.
  RS shifted = add(RS::constant(sp, 1), RS::variable(sp, 1));
  CHECK_THROWS_AS(substitute(geo, {{3, shifted}}, 3), FormalConvergenceError);
  // A polynomial f may take it.
  RS poly(sp);
  poly.add_term(MultiIndex::unit(3, 2), 1);
  RS sq = substitute(poly, {{3, shifted}}, 5);
  CHECK(sq.coeff(MultiIndex{}) == 1);
  CHECK(sq.coeff(MultiIndex::unit(1)) == 2);
  CHECK_FALSE(sq.cap().has_value());
}

TEST_CASE("reciprocal_one_minus") {
  auto sp = tx_space(2);
  RS x1 = RS::variable(sp, 1);
  RS r = reciprocal_one_minus(x1, 5);
  for (unsigned k = 0; k <= 5; ++k) CHECK(r.coeff(MultiIndex::unit(1, k)) == 1);
  CHECK(r.size() == 6);
  RS one = reciprocal_one_minus(RS(sp), 4);
  CHECK(one.size() == 1);
  CHECK(one.coeff(MultiIndex{}) == 1);
  RS g = add(x1, RS::variable(sp, 2));
  RS r2 = reciprocal_one_minus(g, 2);
  // multinomial oracle: coefficient of x1^i x2^j is C(i+j, i)
  CHECK(r2.size() == 6);
  CHECK(r2.coeff(mi({{1, 1}, {2, 1}})) == 2);
  CHECK(r2.coeff(mi({{2, 2}})) == 1);
  CHECK_THROWS_AS(reciprocal_one_minus(add(g, RS::constant(sp, 1)), 3), PreconditionError);
}

TEST_CASE("majorant and is_majorant_of") {
  auto sp = tx_space(2);
  RS f = add(RS::variable(sp, 1, -2), RS::variable(sp, 2));
  RS F = majorant(f);
  CHECK(F.coeff(MultiIndex::unit(1)) == 2);
  CHECK(majorant(F) == F);
  CHECK(is_majorant_of(F, f));
  CHECK_FALSE(is_majorant_of(f, f));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    RS g = random_series(rng, 3, 3, 8);
    CHECK(is_majorant_of(majorant(g), g));
    CHECK(majorant(majorant(g)) == majorant(g));
  }
}

TEST_CASE("ring axioms, Leibniz and substitution associativity in exact arithmetic") {
  std::mt19937_64 rng(12345);
  const unsigned N = 5;
  for (int trial = 0; trial < 25; ++trial) {
    RS a = random_series(rng, 3, 3, 5);
    RS b = random_series(rng, 3, 3, 5);
    RS c = random_series(rng, 3, 3, 5);
    CHECK(mul(mul(a, b, N), c, N).same_terms(mul(a, mul(b, c, N), N)));
    CHECK(mul(a, add(b, c), N).same_terms(add(mul(a, b, N), mul(a, c, N))));
    for (VarIndex i = 1; i <= 3; ++i) {
      RS lhs = truncate(partial_deriv(mul(a, b, N), i), N - 1);
      RS rhs = truncate(add(mul(partial_deriv(a, i), b, N - 1), mul(a, partial_deriv(b, i), N - 1)),
                        N - 1);
      CHECK(lhs.same_terms(rhs));
    }
    // reciprocal times (1-g) is 1 up to cap
    RS g = random_series(rng, 3, 2, 4);
    g.set_coeff(MultiIndex{}, 0);
    RS r = reciprocal_one_minus(g, N);
    RS back = mul(r, sub(RS::constant(g.space(), 1), g), N);
    CHECK(back.same_terms(RS::constant(g.space(), 1)));
  }
  // f o (g o h) = (f o g) o h, with zero-constant inner series.
  for (int trial = 0; trial < 10; ++trial) {
    VariableSpace sp({"t", "x1", "x2", "x3"});
    RS f = random_series(rng, 3, 3, 5);
    Assignment<Rational> g, h;
    for (VarIndex v = 1; v <= 3; ++v) {
      RS gv = random_series(rng, 3, 2, 3);
      gv.set_coeff(MultiIndex{}, 0);
      RS hv = random_series(rng, 3, 2, 3);
      hv.set_coeff(MultiIndex{}, 0);
      g.emplace(v, gv);
      h.emplace(v, hv);
    }
    Assignment<Rational> gh;
    for (auto& [v, gv] : g) gh.emplace(v, substitute(gv, h, N));
    RS left = substitute(f, gh, N);
    RS right = substitute(substitute(f, g, N), h, N);
    CHECK(truncate(left, N).same_terms(truncate(right, N)));
  }
}

TEST_CASE("eval_truncated and geometric series") {
  CHECK(geometric_series(1, 2).size() == 3);
  CHECK(geometric_series(2, 1).size() == 3);
  CHECK(geometric_series(3, 4).size() == 35);

  std::vector<double> pt{0.5, 1.0 / 3.0};
  auto x = PointOracle::finite(pt);
  auto v = eval_truncated(geometric_series(2, 60), x, 60);
  CHECK(v.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::fabs(v.value - 3.0) < 1e-9);

  std::mt19937_64 rng(3);
  RS f = random_series(rng, 2, 3, 6);
  std::vector<double> zero(2, 0.0);
  CHECK(eval_truncated(f, PointOracle::finite(zero), 5).value ==
        doctest::Approx(to_double(f.coeff(MultiIndex{}))));

  // abs_partial nondecreasing in the cap
  std::vector<double> mixed{-0.4, 0.3, 0.2};
  auto geo = geometric_series(3, 12);
  double prev = 0.0;
  for (unsigned cap = 0; cap <= 12; ++cap) {
    double s = eval_truncated(geo, PointOracle::finite(mixed), cap).abs_partial;
    CHECK(s >= prev);
    prev = s;
  }
}

TEST_CASE("factorized geometric evaluation matches the materialized series") {
  std::vector<double> x{0.3, -0.2, 0.15, 0.1};
  for (unsigned cap : {0u, 1u, 3u, 7u}) {
    auto dense = eval_truncated(geometric_series(4, cap), PointOracle::finite(x), cap);
    auto fast = geometric_series_eval(x, cap);
    CHECK(fast.value == doctest::Approx(dense.value).epsilon(1e-13));
    CHECK(fast.abs_partial == doctest::Approx(dense.abs_partial).epsilon(1e-13));
  }
}

TEST_CASE("zeta Euler product against direct partial sums") {
  std::vector<int> primes;
  for (int n = 2; n <= 100; ++n) {
    bool prime = true;
    for (int d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
    if (prime) primes.push_back(n);
  }
  REQUIRE(primes.size() == 25);
  for (double s : {3.0, 4.0}) {
    std::vector<double> x;
    for (int p : primes) x.push_back(std::pow(p, -s));
    double euler = geometric_series_eval(x, 40).value;
    double direct = 0.0;
    for (int n = 1000000; n >= 1; --n) direct += std::pow(n, -s);
    double tail = std::pow(100.0, 1.0 - s) / (s - 1.0);
    CHECK(std::fabs(euler - direct) <= tail);
    CHECK(std::fabs(euler - direct) < (s == 3.0 ? 1e-4 : 1e-5));
  }
}

TEST_CASE("certify_convergence") {
  // Witness x_i = 2^i: sum 2^{-i} converges but the geometric series diverges there.
  auto witness = PointOracle::from_rule(SequenceRule::geometric(1.0, 2.0), 1.0);
  auto geo = geometric_series(6, 14);
  auto at_witness = certify_convergence(geo, 1.0, witness, 14, 10.0);
  CHECK(at_witness.witness_ok);
  CHECK_FALSE(at_witness.sums_bounded);
  CHECK_FALSE(at_witness.success());

  // At h_i = 2^{-i} the partial sums rise to prod 1/(1 - 2^{-i}) but h is not
  // a point near infinity (sum 1/|h_i| diverges).
  auto h = PointOracle::from_rule(SequenceRule::geometric(1.0, 0.5), 1.0);
  auto at_h = certify_convergence(geo, 1.0, h, 14, 10.0);
  CHECK(at_h.sums_bounded);
  CHECK_FALSE(at_h.witness_ok);
  double prod6 = 1.0;
  for (int i = 1; i <= 6; ++i) prod6 /= 1.0 - std::pow(2.0, -i);
  CHECK(at_h.partial_sums.back() <= prod6);
  CHECK(at_h.partial_sums.back() == doctest::Approx(prod6).epsilon(1e-3));
  // Many variables via the factorized evaluator: limit of the q-product.
  std::vector<double> hv;
  for (int i = 1; i <= 60; ++i) hv.push_back(std::pow(2.0, -i));
  double euler = 1.0;
  for (int i = 1; i <= 200; ++i) euler /= 1.0 - std::pow(2.0, -i);
  CHECK(geometric_series_eval(hv, 80).abs_partial == doctest::Approx(euler).epsilon(1e-12));
  CHECK(euler == doctest::Approx(3.462746619455).epsilon(1e-11));

  auto zero = certify_convergence(DS(tx_space(3)), 1.0, witness, 5, 1.0);
  CHECK(zero.success());
  for (double s : zero.partial_sums) CHECK(s == 0.0);

  auto ones = PointOracle::from_rule(SequenceRule::constant(1.0), 1.0);
  auto bad = certify_convergence(geometric_series(4, 8), 1.0, ones, 8, 10.0);
  CHECK_FALSE(bad.success());
  CHECK_FALSE(bad.witness_ok);
  CHECK(bad.partial_sums.back() > 10.0);

  CHECK_THROWS_AS(certify_convergence(geo, 2.0, witness, 4, 10.0), PreconditionError);
}

TEST_CASE("sequence rule tail brackets") {
  // sum_{i>10} i^{-2}
  double exact = 0.0;
  for (int i = 2000000; i > 10; --i) exact += 1.0 / (double(i) * i);
  auto b = SequenceRule::power(1.0, -2.0).tail_bracket(10);
  CHECK(b.lower <= exact + 1e-6);
  CHECK(b.upper >= exact);
  auto g = SequenceRule{1.0, 0.5, 3.0}.tail_bracket(2);
  double gs = 0.0;
  for (int i = 3; i < 400; ++i) gs += std::pow(0.5, i) * std::pow(i, 3.0);
  CHECK(g.lower <= gs * (1 + 1e-12));
  CHECK(g.upper >= gs * (1 - 1e-12));
  CHECK_FALSE(SequenceRule::power(1.0, -1.0).tail_bracket(5).finite());
  CHECK(SequenceRule::zero().tail_bracket(0).upper == 0.0);
  CHECK(SequenceRule{2.0, 0.5, 0.0}.sup_tail(3) == doctest::Approx(2.0 / 16));
}

TEST_CASE("series JSON round trip") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10; ++i) {
    RS f = random_series(rng, 3, 4, 6);
    CHECK(series_from_json<Rational>(series_to_json(f)) == f);
    DS d = to_double_series(f);
    CHECK(series_from_json<double>(nlohmann::json::parse(series_to_json(d).dump())) == d);
  }
  auto j = nlohmann::json::parse(
      R"({"space":["t","x1"],"terms":[{"alpha":[[1,1]],"c":0.1},{"alpha":[],"c":"1/3"}],"cap":null})");
  RS f = series_from_json<Rational>(j);
  CHECK(f.coeff(MultiIndex::unit(1)) == Rational(1, 10));
  CHECK(f.coeff(MultiIndex{}) == Rational(1, 3));
  CHECK_THROWS_AS(series_from_json<double>(nlohmann::json::parse(R"({"terms":[]})")), ParseError);
  CHECK_THROWS_AS(series_from_json<double>(nlohmann::json::parse(
                      R"({"space":["t"],"terms":[{"alpha":[[3,1]],"c":1}]})")),
                  ParseError);
}
