#include "ckh/wiener/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ckh/ck/cauchy.hpp"
#include "ckh/wiener/detail/quadrature.hpp"
#include "ckh/wiener/geometry.hpp"
#include "ckh/wiener/poly_eval.hpp"

namespace ckh {

namespace {

using detail::normal_pdf;

// The defect is small and evaluated through cancellation, so its integral
// uses a shallow rule instead of chasing rounding noise.
constexpr unsigned kDefectDepth = 2;

// Pointwise G1 and G2 from the polynomial coefficients, so that the
// identity is not polluted by truncated series products.
struct Operators {
  std::vector<PolyWithGradient> a;
  PolyEval b;
  std::vector<double> A;

  Operators(const TransformedCoefficients& c, const std::vector<double>& A_) : A(A_) {
    const std::size_t d = A.size();
    for (const auto& ai : c.a_tilde) a.emplace_back(ai, d);
    b = PolyEval(c.b_tilde);
  }

  double G1(const PolyWithGradient& U, std::span<const double> y) const {
    double v = U.grad[0](y) - b(y) * U.value(y);
    for (std::size_t i = 0; i < a.size(); ++i) v -= a[i].value(y) * U.grad[i + 1](y);
    return v;
  }

  double G2(const PolyWithGradient& W, std::span<const double> y, double e) const {
    double w = W.value(y);
    double v = -W.grad[0](y) + (-b(y) + y[0] / std::pow(A[0], e)) * w;
    for (std::size_t i = 0; i < a.size(); ++i) {
      double ai = a[i].value(y);
      v += a[i].grad[i + 1](y) * w + ai * W.grad[i + 1](y);
      v -= y[i + 1] * ai / std::pow(A[i + 1], e) * w;
    }
    return v;
  }
};

double gaussian_density(const std::vector<double>& A, std::span<const double> y) {
  double p = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i) p *= normal_pdf(y[i], A[i]);
  return p;
}

double base_density(const std::vector<double>& A, std::span<const double> x) {
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) p *= normal_pdf(x[i], A[i + 1]);
  return p;
}

double max_abs_coeff(const MonomialSeries<double>& f) {
  double m = 0.0;
  for (const auto& [alpha, c] : f.terms()) m = std::max(m, std::fabs(c));
  return m;
}

}  // namespace

void require_vanishing_on_k(const MonomialSeries<double>& U, std::size_t n, double lambda,
                            double tol) {
  if (U.is_zero()) return;
  PolyEval u(U);
  const double scale = max_abs_coeff(U);
  std::vector<double> y(n + 1);
  // Points of the paraboloid along every axis and diagonal, on a radial grid.
  const int radial = 9;
  for (int k = 0; k <= radial; ++k) {
    double r = std::sqrt(lambda) * k / radial;
    for (std::size_t dir = 0; dir <= n; ++dir) {
      std::fill(y.begin(), y.end(), 0.0);
      if (dir < n) {
        y[dir + 1] = r;
      } else {
        for (std::size_t i = 1; i <= n; ++i) y[i] = r / std::sqrt(static_cast<double>(n));
      }
      y[0] = r * r;
      double v = u(y);
      if (!(std::fabs(v) <= tol * std::max(1.0, scale))) {
        throw PreconditionError("U does not vanish on k_lambda");
      }
    }
  }
}

double surface_integral_l(const MonomialSeries<double>& f, const std::vector<double>& A,
                          double lambda) {
  const std::size_t n = A.size() - 1;
  PolyEval fe(f);
  SurfaceChart top = SurfaceChart::flat(n, lambda);
  std::vector<double> y(n + 1);
  std::vector<double> origin;
  return detail::integrate_ball(
      [&](std::span<const double> x) {
        y[0] = lambda;
        std::copy(x.begin(), x.end(), y.begin() + 1);
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        if (!(r2 < lambda)) return 0.0;
        return fe(y) * surface_density(top, A, 1.0, origin, x) * base_density(A, x);
      },
      n, std::sqrt(lambda));
}

GreenResult green_residual(const MonomialSeries<double>& W, const MonomialSeries<double>& U,
                           const TransformedCoefficients& coeffs, const WeightScheme& w,
                           double lambda, std::size_t n, Method method, std::size_t samples,
                           std::uint64_t seed) {
  if (!(lambda > 0.0)) throw PreconditionError("lambda must be positive");
  if (coeffs.a_tilde.size() != n) throw PreconditionError("coefficients do not match n");
  if (method == Method::Quadrature && n > 3) throw PreconditionError("quadrature supports n <= 3");
  require_vanishing_on_k(U, n, lambda);
  const std::vector<double> A = w.A_vector(n);
  Operators ops(coeffs, A);
  PolyWithGradient Wp(W, n + 1), Up(U, n + 1);
  const double e_cubic = weighting_exponent(AdjointWeighting::Cubic);
  const double e_gauss = weighting_exponent(AdjointWeighting::Gaussian);
  const double sigma_top = surface_density(SurfaceChart::flat(n, lambda, false), A, 1.0, {},
                                           std::vector<double>(n, 0.0));

  GreenResult out;
  out.method = method;
  out.boundary_factor = 1.0 / A[0];
  const double cubic_factor = lambda / (A[0] * A[0]);

  // Volume integrands (consistent, cubic) and the surface integrand W U on l_lambda.
  auto volume = [&](std::span<const double> y, double e) {
    return Wp.value(y) * ops.G1(Up, y) - Up.value(y) * ops.G2(Wp, y, e);
  };
  auto top_wu = [&](std::span<const double> x, std::vector<double>& y) {
    y[0] = lambda;
    std::copy(x.begin(), x.end(), y.begin() + 1);
    return Wp.value(y) * Up.value(y);
  };

  double top_integral = 0.0;  // int_{l_lambda} W U sigma
  if (method == Method::Quadrature) {
    out.lhs = detail::integrate_H(
        [&](std::span<const double> y) { return volume(y, e_gauss) * gaussian_density(A, y); }, n,
        lambda);
    out.cubic_lhs = detail::integrate_H(
        [&](std::span<const double> y) { return volume(y, e_cubic) * gaussian_density(A, y); }, n,
        lambda);
    std::vector<double> y(n + 1);
    top_integral = sigma_top * detail::integrate_ball(
                                   [&](std::span<const double> x) {
                                     return top_wu(x, y) * base_density(A, x);
                                   },
                                   n, std::sqrt(lambda));
  } else {
    Region H{n, lambda, Region::Kind::H};
    GaussianSampler s(A, 1.0, seed);
    auto est = mc_expectations(
        [&](std::span<const double> y, std::span<double> res) {
          thread_local std::vector<double> yy;
          yy.resize(n + 1);
          bool inside = H.contains(y);
          double lg = inside ? volume(y, e_gauss) : 0.0;
          double lp = inside ? volume(y, e_cubic) : 0.0;
          double r2 = 0.0;
          for (std::size_t i = 1; i <= n; ++i) r2 += y[i] * y[i];
          double top = r2 < lambda ? sigma_top * top_wu(y.subspan(1), yy) : 0.0;
          res[0] = lg;
          res[1] = lp;
          res[2] = top;
          res[3] = lg - out.boundary_factor * top;
        },
        4, s, samples);
    out.lhs = est[0].mean;
    out.cubic_lhs = est[1].mean;
    top_integral = est[2].mean;
    out.error_bar = est[3].stderr_;
    out.samples = samples;
  }
  out.rhs = out.boundary_factor * top_integral;
  out.residual = out.lhs - out.rhs;
  out.cubic_rhs = cubic_factor * top_integral;
  out.cubic_residual = out.cubic_lhs - out.cubic_rhs;

  // <F, n>_H for the Holmgren field on the flat top, averaged against sigma on
  // probe points of l_lambda.
  HolmgrenField pf = holmgren_field(w, coeffs.a_tilde);
  VectorField F = pf.field();
  SurfaceChart top = SurfaceChart::flat(n, lambda);
  double num = 0.0, den = 0.0;
  const int probes = 16;
  for (int k = 0; k < probes; ++k) {
    std::vector<double> z(n, 0.0);
    z[k % n] = std::sqrt(lambda) * (2.0 * k + 1.0 - probes) / (probes + 1.0);
    std::vector<double> y = top.lift(z);
    std::vector<double> h = unit_normal(top, A, z);
    double sig = surface_density(top, A, 1.0, {}, z) * base_density(A, z);
    num += h_inner(F(y), h, A) * sig;
    den += sig;
  }
  out.surface_factor = num / den;
  out.surface_factor_expected = cubic_factor;
  return out;
}

HolmgrenReport holmgren_moment_demo(const LinearFirstOrderProblem<double>& p,
                                    const HolmgrenOptions& opts) {
  const std::size_t n = p.n();
  if (n == 0 || n > 3) throw PreconditionError("the moment demo runs by quadrature for n = 1..3");
  if (!(opts.lambda > 0.0)) throw PreconditionError("lambda must be positive");
  HolmgrenReport rep;
  rep.weights = build_weights(p, opts.pattern);
  rep.A = rep.weights.A_vector(n);
  TransformedCoefficients tc = change_of_variables(p, opts.cap);

  MonomialSeries<double> U(tx_space(n));
  if (opts.user_U) {
    U = *opts.user_U;
    U.set_space(tx_space(n));
    require_vanishing_on_k(U, n, opts.lambda);
  } else if (p.phi.is_zero()) {
    // d_t' U = sum a~ d U + b~ U from phi = 0.
    auto tp = make_linear_problem(tc.a_tilde, tc.b_tilde, p.phi);
    U = solve(to_cauchy(tp), opts.solver_degree).series;
    rep.zero_solution = U.is_zero();
  } else {
    throw PreconditionError(
        "nonzero initial data needs a user-supplied U that vanishes on k_lambda");
  }

  G2Problem g2 = build_G2(tc.a_tilde, tc.b_tilde, rep.weights, opts.cap, opts.lambda,
                          opts.weighting);
  rep.boundary_factor = opts.weighting == AdjointWeighting::Gaussian
                            ? 1.0 / rep.A[0]
                            : opts.lambda / (rep.A[0] * rep.A[0]);
  Operators ops(tc, rep.A);
  const double e = weighting_exponent(opts.weighting);
  for (const MultiIndex& k : opts.degrees) {
    if (k.exponent(0) != 0) throw PreconditionError("moment indices must not involve t'");
    MonomialSeries<double> datum(tx_space(n));
    datum.add_term(k, 1.0);
    MonomialSeries<double> W = solve_adjoint(g2, datum, opts.solver_degree);
    PolyWithGradient Wp(W, n + 1), Up(U, n + 1);
    MomentRow row;
    row.k = k;
    row.w_terms = W.size();
    row.moment_direct = surface_integral_l(mul(datum, U, 64), rep.A, opts.lambda);
    row.green_lhs = detail::integrate_H(
        [&](std::span<const double> y) {
          return (Wp.value(y) * ops.G1(Up, y) - Up.value(y) * ops.G2(Wp, y, e)) *
                 gaussian_density(rep.A, y);
        },
        n, opts.lambda);
    row.adjoint_defect = std::sqrt(std::max(
        0.0, detail::integrate_H(
                 [&](std::span<const double> y) {
                   double g = ops.G2(Wp, y, e);
                   return g * g * gaussian_density(rep.A, y);
                 },
                 n, opts.lambda, kDefectDepth)));
    row.moment_green = row.green_lhs / rep.boundary_factor;
    row.difference = row.moment_green - row.moment_direct;
    rep.max_abs_moment = std::max(rep.max_abs_moment, std::fabs(row.moment_direct));
    rep.max_difference = std::max(rep.max_difference, std::fabs(row.difference));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace ckh
