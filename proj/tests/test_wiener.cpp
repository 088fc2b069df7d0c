#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ckh/error.hpp"
#include "ckh/wiener/field.hpp"
#include "ckh/wiener/geometry.hpp"
#include "ckh/wiener/green.hpp"
#include "ckh/wiener/hermite.hpp"
#include "ckh/wiener/sampler.hpp"
#include "ckh/wiener/transform.hpp"
#include "ckh/wiener/weights.hpp"

using namespace ckh;

namespace {

constexpr double kPi = std::numbers::pi;

double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double pdf(double x, double s) {
  return std::exp(-0.5 * x * x / (s * s)) / (s * std::sqrt(2.0 * kPi));
}
// int_{-a}^{a} x^2 N(0, s^2)(dx)
double second_moment_on(double a, double s) {
  double z = a / s;
  return s * s * ((2.0 * Phi(z) - 1.0) - 2.0 * z * pdf(z, 1.0));
}

MonomialSeries<double> poly(std::size_t n, std::initializer_list<std::pair<MultiIndex, double>> terms) {
  MonomialSeries<double> f(tx_space(n));
  for (const auto& [a, c] : terms) f.add_term(a, c);
  return f;
}

MultiIndex x(VarIndex i, Exponent e = 1) { return MultiIndex::unit(i, e); }

LinearFirstOrderProblem<double> const_a1(std::size_t n, double c) {
  std::vector<MonomialSeries<double>> a(n, MonomialSeries<double>(tx_space(n)));
  a[0] = MonomialSeries<double>::constant(tx_space(n), c);
  return make_linear_problem(std::move(a), MonomialSeries<double>(tx_space(n)),
                             MonomialSeries<double>(tx_space(n)));
}

}  // namespace

TEST_CASE("sampler moments and determinism") {
  GaussianSampler s({0.5, 1.0, 0.25}, 2.0, 7);
  const std::size_t count = 200000;
  auto ys = sample(s, count);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    double m = 0.0, v = 0.0, q = 0.0;
    for (std::size_t r = 0; r < count; ++r) {
      double y = ys[r * s.dim() + i];
      m += y;
      v += y * y;
      q += y * y * y * y;
    }
    m /= count;
    v /= count;
    q /= count;
    double var = 2.0 * s.scales[i] * s.scales[i];
    CHECK(std::fabs(m) < 4.0 * std::sqrt(var / count));
    CHECK(std::fabs(v - var) < 4.0 * var * std::sqrt(2.0 / count));
    CHECK(std::fabs(q - 3.0 * var * var) < 4.0 * var * var * std::sqrt(96.0 / count));
  }
  CHECK(sample(s, 1000) == sample(s, 1000));
  CHECK(sample(s.with_stream(3), 10) != sample(s, 10));
  CHECK_THROWS_AS(GaussianSampler({1.0}, 0.0, 1), PreconditionError);
}

TEST_CASE("sampler example: variance of coordinate 0") {
  GaussianSampler s({0.5, 1.0}, 1.0, 11);
  auto e = mc_expectation([](std::span<const double> y) { return y[0] * y[0]; }, s, 100000);
  CHECK(std::fabs(e.mean - 0.25) < 3.0 * e.stderr_);
}

TEST_CASE("mc_expectation examples") {
  GaussianSampler s({1.0}, 1.0, 5);
  auto one = mc_expectation([](std::span<const double>) { return 1.0; }, s, 10000);
  CHECK(one.mean == 1.0);
  CHECK(one.stderr_ == 0.0);
  auto sq = mc_expectation([](std::span<const double> y) { return y[0] * y[0]; }, s, 200000);
  CHECK(std::fabs(sq.mean - 1.0) < 3.0 * sq.stderr_);
  auto ex = mc_expectation([](std::span<const double> y) { return std::exp(0.25 * y[0] * y[0]); },
                           s, 400000);
  CHECK(std::fabs(ex.mean - std::sqrt(2.0)) < 3.0 * ex.stderr_);
  auto bad = mc_expectation(
      [](std::span<const double> y) { return y[0] > 0 ? std::nan("") : 1.0; }, s, 1000);
  CHECK(bad.rejected > 300);
  CHECK(bad.rejected + bad.count == 1000);
}

TEST_CASE("fernique probe") {
  GaussianSampler s({1.0}, 1.0, 9);
  auto r = fernique_probe(s, 0.25, 400000);
  // The doubled-variance proposal is the exact optimal density here, so the
  // spread is pure rounding.
  CHECK(std::fabs(r.estimate - std::sqrt(2.0)) < 3.0 * r.stderr_ + 1e-12);
  CHECK(r.stable);
  auto r01 = fernique_probe(s, 0.1, 400000);
  CHECK(std::fabs(r01.estimate - 1.0 / std::sqrt(0.8)) < 3.0 * r01.stderr_);
  CHECK_FALSE(fernique_probe(s, 0.5, 400000).stable);
  auto z = fernique_probe(GaussianSampler({0.3, 2.0, 1.0}, 4.0, 1), 0.0, 10);
  CHECK(z.estimate == 1.0);
  CHECK(z.threshold == doctest::Approx(1.0 / 32.0));
}

TEST_CASE("scaling law examples") {
  GaussianSampler s({1.0}, 1.0, 3);
  ScalingSet box{ScalingSet::Kind::Box, {-1.0}, {1.0}, 0.0};
  auto r = scaling_check(s, 4.0, box, 400000);
  double exact = 2.0 * Phi(0.5) - 1.0;
  CHECK(exact == doctest::Approx(0.38292).epsilon(1e-4));
  CHECK(std::fabs(r.lhs.mean - exact) < 4.0 * r.lhs.stderr_);
  CHECK(std::fabs(r.rhs.mean - exact) < 4.0 * r.rhs.stderr_);
  CHECK(r.pass);
  auto whole = scaling_check(s, 2.0, ScalingSet{}, 1000);
  CHECK(whole.lhs.mean == 1.0);
  CHECK(whole.rhs.mean == 1.0);
  CHECK(whole.pass);
  ScalingSet ball{ScalingSet::Kind::Ball, {}, {}, 1.0};
  CHECK(scaling_check(GaussianSampler({0.5, 0.7}, 1.0, 4), 3.0, ball, 200000).pass);
}

TEST_CASE("weight scheme: shipped pattern") {
  auto w = build_weights(const_a1(2, 0.0));
  CHECK(w.rho1 == 1.0);
  CHECK(w.bound_sum == 0.0);
  CHECK(w.t_sqrt(0) == 0.25);
  CHECK(w.s_sqrt(1) == 0.25);
  CHECK(w.A(0) == 0.5);
  CHECK(w.A(1) * w.A(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w.A(2) * w.A(2) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(w.sum_A2() == 0.75);
  auto inv = check_weight_invariants(w);
  CHECK(inv.sqrt_sum_error < 1e-12);
  CHECK(inv.ok);
}

TEST_CASE("weight scheme: constant a1 and failure") {
  // a1 = 1: the sum is 16 rho (A_1^4 = 1/16), so rho1 = 1/64 and the sum 1/4.
  auto w = build_weights(const_a1(1, 1.0));
  CHECK(w.rho1 == 1.0 / 64.0);
  CHECK(w.rho0 == 2.0 * w.rho1);
  CHECK(w.bound_sum == doctest::Approx(0.25));
  CHECK(check_weight_invariants(w).ok);
  // Coefficients growing too fast for any grid point.
  std::vector<MonomialSeries<double>> a{MonomialSeries<double>::constant(tx_space(1), 1e30)};
  auto p = make_linear_problem(std::move(a), MonomialSeries<double>(tx_space(1)),
                               MonomialSeries<double>(tx_space(1)));
  CHECK_THROWS_AS(build_weights(p), NoSchemeError);
}

TEST_CASE("change of variables examples") {
  const double c = 0.5;
  auto tc = change_of_variables(const_a1(1, c), 10);
  for (Exponent k = 0; k <= 10; ++k) {
    CHECK(tc.a_tilde[0].coeff(x(1, k)) == doctest::Approx(c * std::pow(2.0 * c, k)));
  }
  // a1 = x1: 1/(1 - 2 x1^2) = sum 2^k x1^{2k}
  std::vector<MonomialSeries<double>> a{poly(1, {{x(1), 1.0}})};
  auto p = make_linear_problem(std::move(a), MonomialSeries<double>::constant(tx_space(1), 1.0),
                               MonomialSeries<double>(tx_space(1)));
  auto t2 = change_of_variables(p, 9);
  CHECK(t2.a_tilde[0].coeff(x(1)) == 1.0);
  CHECK(t2.a_tilde[0].coeff(x(1, 3)) == 2.0);
  CHECK(t2.a_tilde[0].coeff(x(1, 5)) == 4.0);
  CHECK(t2.a_tilde[0].coeff(x(1, 2)) == 0.0);
  CHECK(t2.b_tilde.coeff(x(1, 4)) == 4.0);
  auto t0 = change_of_variables(const_a1(1, 0.0), 6);
  CHECK(t0.a_tilde[0].is_zero());
}

TEST_CASE("build_G2 examples") {
  auto w = build_weights(const_a1(1, 0.0));
  const double A0 = w.A(0), A1 = w.A(1);
  std::vector<MonomialSeries<double>> zero{MonomialSeries<double>(tx_space(1))};
  auto g = build_G2(zero, MonomialSeries<double>(tx_space(1)), w, 8);
  auto one = MonomialSeries<double>::constant(tx_space(1), 1.0);
  auto r = g.apply(one, 8);
  CHECK(r.size() == 1);
  CHECK(r.coeff(x(0)) == doctest::Approx(1.0 / std::pow(A0, 3)));
  // a~1 = x1: b' = 1 - x1^2 / A_1^3 + t'/A_0^3
  std::vector<MonomialSeries<double>> lin{poly(1, {{x(1), 1.0}})};
  auto g2 = build_G2(lin, MonomialSeries<double>(tx_space(1)), w, 8);
  auto bp = g2.b_prime();
  CHECK(bp.coeff(MultiIndex{}) == 1.0);
  CHECK(bp.coeff(x(1, 2)) == doctest::Approx(-1.0 / std::pow(A1, 3)));
  CHECK(bp.coeff(x(0)) == doctest::Approx(1.0 / std::pow(A0, 3)));
  CHECK(bp.size() == 3);
  auto gg = build_G2(lin, MonomialSeries<double>(tx_space(1)), w, 8, 0.25, AdjointWeighting::Gaussian);
  CHECK(gg.b_prime().coeff(x(1, 2)) == doctest::Approx(-1.0 / (A1 * A1)));
  CHECK(gg.reversed.time_dependent);
}

TEST_CASE("adjoint solve satisfies G2[W] = 0 to the solver degree") {
  auto p = const_a1(1, 0.5);
  auto w = build_weights(p);
  auto tc = change_of_variables(p, 12);
  auto g2 = build_G2(tc.a_tilde, tc.b_tilde, w, 12, 0.25, AdjointWeighting::Gaussian);
  auto datum = poly(1, {{x(1, 2), 1.0}});
  auto W = solve_adjoint(g2, datum, 10);
  // On t' = lambda the datum is recovered.
  for (double xv : {-0.3, 0.1, 0.4}) {
    std::vector<double> y{0.25, xv};
    CHECK(eval_at<double>(W, y) == doctest::Approx(xv * xv).epsilon(1e-12));
  }
  // The defect G2[W] is of order |(lambda - t', x)|^10 near the datum slice.
  auto defect = g2.apply(W, 40);
  std::vector<double> near{0.24, 0.01}, far{0.05, 0.2};
  CHECK(std::fabs(eval_at<double>(defect, near)) < 1e-9);
  CHECK(std::fabs(eval_at<double>(defect, far)) < 1e-3);
}

TEST_CASE("regions and charts") {
  Region H{1, 0.25, Region::Kind::H};
  std::vector<double> in{0.2, 0.1}, out{0.2, 0.5};
  CHECK(H.contains(in));
  CHECK_FALSE(H.contains(out));
  CHECK(Region{1, 0.25, Region::Kind::l}.contains(std::vector<double>{0.25, 0.3}));
  CHECK(Region{1, 0.25, Region::Kind::k}.contains(std::vector<double>{0.04, 0.2}));
  CHECK(Region{1, 0.25, Region::Kind::I}.contains(std::vector<double>{0.25, -0.5}));
  CHECK(Region{1, 0.25, Region::Kind::L}.contains(std::vector<double>{0.25, 7.0}));

  std::vector<double> A{0.5, 0.5, 0.35};
  auto para = SurfaceChart::paraboloid(2, 0.25);
  std::vector<double> z{0.2, -0.1};
  auto h = unit_normal(para, A, z);
  CHECK(h_norm(h, A) == doctest::Approx(1.0));
  std::vector<double> v{0.3, -1.0, 2.0};
  auto Nv = project_N(h, A, v);
  auto NNv = project_N(h, A, Nv);
  for (std::size_t i = 0; i < 3; ++i) CHECK(NNv[i] == doctest::Approx(Nv[i]));
  auto Jh = chart_J(h, A, h);
  for (double c : Jh) CHECK(std::fabs(c) < 1e-14);
  CHECK_THROWS_AS(unit_normal(para, A, std::vector<double>{0.5, 0.1}), DomainError);
}

TEST_CASE("surface density examples") {
  std::vector<double> A{0.5, 1.0};
  double d = surface_density(SurfaceChart::flat(1, 0.25), A, 1.0, {}, std::vector<double>{0.1});
  CHECK(d == doctest::Approx(std::exp(-0.125) / std::sqrt(2.0 * kPi)));
  CHECK(d == doctest::Approx(0.35206).epsilon(1e-4));
  double d0 = surface_density(SurfaceChart::flat(1, 0.0, false), A, 1.0, {},
                              std::vector<double>{0.3});
  CHECK(d0 == doctest::Approx(0.39894).epsilon(1e-4));
  CHECK_THROWS_AS(surface_density(SurfaceChart::flat(1, 0.25), A, 1.0, {},
                                  std::vector<double>{0.6}),
                  DomainError);
  // Paraboloid: density against p' is the Euclidean flux density
  // |grad G| p_0(g) ... expressed through |DG|_H / A_0.
  auto para = SurfaceChart::paraboloid(1, 0.25);
  double z = 0.3;
  double expect = std::sqrt(A[0] * A[0] + A[1] * A[1] * 4 * z * z) / A[0] *
                  std::exp(-z * z * z * z / (2 * A[0] * A[0])) / std::sqrt(2 * kPi);
  CHECK(surface_density(para, A, 1.0, {}, std::vector<double>{z}) == doctest::Approx(expect));
}

TEST_CASE("divergence theorem in one dimension against the closed form") {
  GaussianSampler s({1.0}, 1.0, 1);
  auto y = [](double c1, double c2) {
    return polynomial_field({poly(0, {{x(0), c1}, {x(0, 2), c2}})});
  };
  Box unit{{0.0}, {1.0}}, sym{{-1.0}, {1.0}};
  const double p0 = pdf(0, 1), p1 = pdf(1, 1);
  struct Case {
    VectorField F;
    Box box;
    double expect;
  };
  std::vector<Case> cases{{constant_field({1.0}), unit, p1 - p0},
                          {constant_field({1.0}), sym, 0.0},
                          {y(1, 0), unit, p1},
                          {y(1, 0), sym, 2 * p1},
                          {y(0, 1), unit, p1},
                          {y(0, 1), sym, 0.0}};
  for (const auto& c : cases) {
    auto q = divergence_residual(c.F, c.box, s, Method::Quadrature);
    CHECK(std::fabs(q.residual) < 1e-10);
    CHECK(std::fabs(q.rhs - c.expect) < 1e-12);
    auto m = divergence_residual(c.F, c.box, s, Method::MonteCarlo, 200000);
    CHECK(std::fabs(m.residual) < 3.0 * m.error_bar + 1e-15);
    CHECK(std::fabs(m.rhs - c.expect) < 1e-12);
  }
}

TEST_CASE("divergence convention with a non-unit weight") {
  // A = 0.5, t = 2: the lhs of F = 1 on (0,1) is the density difference of N(0, 0.5).
  GaussianSampler s({0.5}, 2.0, 1);
  auto q = divergence_residual(constant_field({1.0}), Box{{0.0}, {1.0}}, s, Method::Quadrature);
  double sd = std::sqrt(0.5);
  CHECK(q.lhs == doctest::Approx(pdf(1.0, sd) - pdf(0.0, sd)).epsilon(1e-10));
  CHECK(std::fabs(q.residual) < 1e-10);
}

TEST_CASE("divergence theorem on a box in two dimensions") {
  GaussianSampler s({0.7, 1.3}, 0.8, 2);
  auto F = linear_field({0.5, -1.0, 2.0, 0.25}, {0.1, -0.3});
  Box b{{-0.5, 0.0}, {1.0, std::numeric_limits<double>::infinity()}};
  auto q = divergence_residual(F, b, s, Method::Quadrature);
  CHECK(std::fabs(q.residual) < 1e-8);
  auto m = divergence_residual(F, b, s, Method::MonteCarlo, 200000);
  CHECK(std::fabs(m.residual) < 3.0 * m.error_bar);
}

TEST_CASE("divergence theorem on H_lambda") {
  auto p = const_a1(2, 0.5);
  auto w = build_weights(p);
  auto tc = change_of_variables(p, 16);
  auto pf = holmgren_field(w, tc.a_tilde);
  GaussianSampler s(w.A_vector(2), 1.0, 21);
  Region H{2, 0.25, Region::Kind::H};
  auto q = divergence_residual(pf.field(), H, s, Method::Quadrature);
  CHECK(std::fabs(q.residual) < 1e-6);
  CHECK(std::fabs(q.lhs) > 1e-3);
  auto m = divergence_residual(pf.field(), H, s, Method::MonteCarlo, 200000);
  CHECK(std::fabs(m.residual) < 3.0 * m.error_bar);
  CHECK(std::fabs(m.lhs - q.lhs) < 4.0 * m.error_bar + 0.05 * std::fabs(q.lhs));
  // A field family on H at n = 1.
  GaussianSampler s1(w.A_vector(1), 1.5, 3);
  Region H1{1, 0.3, Region::Kind::H};
  for (const auto& F : {constant_field({1.0, -2.0}), linear_field({1, 2, -3, 0.5}, {0.2, 0.1})}) {
    CHECK(std::fabs(divergence_residual(F, H1, s1, Method::Quadrature).residual) < 1e-9);
  }
  CHECK_THROWS_AS(divergence_residual(pf.field(), Region{2, 0.25, Region::Kind::l}, s,
                                      Method::Quadrature),
                  PreconditionError);
}

TEST_CASE("F bounds") {
  auto w = build_weights(const_a1(1, 0.0));
  const double lambda = 0.2, A0 = w.A(0), A1 = w.A(1);
  Region H{1, lambda, Region::Kind::H};
  std::vector<MonomialSeries<double>> zero{MonomialSeries<double>(tx_space(1))};
  auto r0 = check_F_bounds(holmgren_field(w, zero), H, 200, 1);
  CHECK(r0.bstar_sup == doctest::Approx(std::pow(lambda / std::pow(A0, 3), 2)));
  CHECK(r0.finite);
  // a~1 = x1: DF = diag(1/A0, -1/A1) in B-coordinates, trace norm 1/A0 + 1/A1.
  std::vector<MonomialSeries<double>> lin{poly(1, {{x(1), 1.0}})};
  auto r1 = check_F_bounds(holmgren_field(w, lin), H, 200, 1);
  CHECK(r1.trace_norm_integral == doctest::Approx(1.0 / A0 + 1.0 / A1));
  CHECK(r1.trace_norm_stderr < 1e-12);
  // Constant a~1 = c: at the corner (lambda, sqrt(lambda)) the B* sum is
  // (lambda/A0^3)^2 + (c/A1^3)^2.
  const double c = 0.7;
  std::vector<MonomialSeries<double>> cst{MonomialSeries<double>::constant(tx_space(1), c)};
  auto rc = check_F_bounds(holmgren_field(w, cst), H, 500, 2);
  double corner = std::pow(lambda / std::pow(A0, 3), 2) + std::pow(c / std::pow(A1, 3), 2);
  CHECK(rc.corner_bstar == doctest::Approx(corner));
  CHECK(rc.bstar_sup == doctest::Approx(corner));
  CHECK(rc.H_sup == doctest::Approx(std::pow(lambda / (A0 * A0), 2) + std::pow(c / (A1 * A1), 2)));
}

TEST_CASE("Green identity examples") {
  auto p = const_a1(1, 0.0);
  auto w = build_weights(p);
  auto tc = change_of_variables(p, 8);
  const double lambda = 0.25, A0 = w.A(0), A1 = w.A(1);
  auto U = poly(1, {{x(0), 1.0}, {x(1, 2), -1.0}});
  auto W1 = MonomialSeries<double>::constant(tx_space(1), 1.0);
  auto g = green_residual(W1, U, tc, w, lambda, 1, Method::Quadrature);
  // Independent rhs: (1/A0) sigma_top int_{|x|<sqrt(lambda)} (lambda - x^2) p'(dx).
  double a = std::sqrt(lambda);
  double top = lambda * (2 * Phi(a / A1) - 1) - second_moment_on(a, A1);
  double sigma = std::exp(-lambda * lambda / (2 * A0 * A0)) / std::sqrt(2 * kPi);
  CHECK(g.rhs == doctest::Approx(top * sigma / A0).epsilon(1e-9));
  CHECK(std::fabs(g.residual) < 1e-6);
  CHECK(g.surface_factor == doctest::Approx(lambda / (A0 * A0)).epsilon(1e-12));
  // The cubic weighting does not close against this Gaussian.
  CHECK(std::fabs(g.cubic_residual) > 1e-3);

  auto Wx = poly(1, {{x(1), 1.0}});
  auto gx = green_residual(Wx, U, tc, w, lambda, 1, Method::Quadrature);
  CHECK(std::fabs(gx.residual) < 1e-6);
  auto zero = green_residual(Wx, MonomialSeries<double>(tx_space(1)), tc, w, lambda, 1,
                             Method::Quadrature);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  auto mc = green_residual(W1, U, tc, w, lambda, 1, Method::MonteCarlo, 200000, 5);
  CHECK(std::fabs(mc.residual) < 3.0 * mc.error_bar);
  CHECK_THROWS_AS(green_residual(W1, poly(1, {{x(0), 1.0}}), tc, w, lambda, 1, Method::Quadrature),
                  PreconditionError);
}

TEST_CASE("Green identity with nonzero coefficients") {
  auto p = const_a1(2, 0.5);
  auto w = build_weights(p);
  auto tc = change_of_variables(p, 12);
  auto U = poly(2, {{x(0), 1.0}, {x(1, 2), -1.0}, {x(2, 2), -1.0}});
  U = mul(U, poly(2, {{MultiIndex{}, 1.0}, {x(1), 0.5}}), 8);
  auto W = poly(2, {{x(1), 1.0}, {x(0) + x(2), 2.0}});
  auto g = green_residual(W, U, tc, w, 0.2, 2, Method::Quadrature);
  CHECK(std::fabs(g.residual) < 1e-6);
}

TEST_CASE("Holmgren demo") {
  auto p = const_a1(1, 0.5);
  HolmgrenOptions o;
  o.lambda = 0.1;
  o.solver_degree = 6;
  o.cap = 8;
  o.degrees = {MultiIndex{}, x(1), x(1, 2)};
  auto zero = holmgren_moment_demo(p, o);
  CHECK(zero.zero_solution);
  for (const auto& r : zero.rows) {
    CHECK(r.moment_direct == 0.0);
    CHECK(r.moment_green == 0.0);
  }
  o.user_U = poly(1, {{x(0), 1.0}, {x(1, 2), -1.0}});
  auto rep = holmgren_moment_demo(p, o);
  // k = 0: int_{l} (lambda - x^2) sigma in closed form.
  double A0 = rep.A[0], A1 = rep.A[1], a = std::sqrt(o.lambda);
  double sigma = std::exp(-o.lambda * o.lambda / (2 * A0 * A0)) / std::sqrt(2 * kPi);
  double m0 = sigma * (o.lambda * (2 * Phi(a / A1) - 1) - second_moment_on(a, A1));
  CHECK(rep.rows[0].moment_direct == doctest::Approx(m0).epsilon(1e-9));
  CHECK(std::fabs(rep.rows[0].difference) < 1e-6);
  CHECK(std::fabs(rep.rows[1].moment_direct) < 1e-14);
  CHECK(rep.max_difference < 1e-6);
  auto nonzero = p;
  nonzero.phi = poly(1, {{x(1), 1.0}});
  o.user_U.reset();
  CHECK_THROWS_AS(holmgren_moment_demo(nonzero, o), PreconditionError);
}

TEST_CASE("hermite projection") {
  GaussianSampler s({0.5, 0.7}, 2.0, 13);
  auto lin = hermite_projection([](std::span<const double> y) { return y[1]; }, 2, s, 20000);
  for (std::size_t b = 0; b < lin.basis.size(); ++b) {
    double expect = lin.basis[b] == MultiIndex::unit(1) ? s.sd(1) : 0.0;
    CHECK(lin.coefficients[b] == doctest::Approx(expect).epsilon(1e-9).scale(1.0));
  }
  CHECK(lin.residual < 1e-9);
  auto z = hermite_projection([](std::span<const double>) { return 0.0; }, 3, s, 1000);
  for (double c : z.coefficients) CHECK(c == 0.0);
  CHECK(hermite_normalized(2, 1.5) == doctest::Approx((1.5 * 1.5 - 1.0) / std::sqrt(2.0)));

  GaussianSampler s3({0.5, 0.5, std::sqrt(0.125)}, 1.0, 17);
  auto ind = [](std::span<const double> y) { return y[1] * y[1] + y[2] * y[2] < 0.25 ? 1.0 : 0.0; };
  auto cmp = hermite_compare(ind, 2, 6, s3, 100000);
  CHECK(cmp.strictly_decreasing);
  CHECK(cmp.high.residual < cmp.low.residual);
  CHECK(cmp.high.train_residual <= cmp.low.train_residual);
}
