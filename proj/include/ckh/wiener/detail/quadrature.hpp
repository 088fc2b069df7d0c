#pragma once

// Nested adaptive Gauss-Kronrod quadrature used to cross-check the Monte Carlo
// paths. Not part of the public interface.

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ckh/error.hpp"

namespace ckh::detail {

inline constexpr double kQuadTol = 1e-11;
inline constexpr unsigned kQuadDepth = 12;

using Fn1 = std::function<double(double)>;
using FnN = std::function<double(std::span<const double>)>;

namespace impl {

// Bisection on top of the single GK15 rule, accepting a panel when the
// Kronrod error estimate is small against the panel's L1 norm. (The library's
// own adaptive driver measures against |estimate|, which never terminates
// early for integrals that vanish by symmetry.)
inline double gk_rec(const Fn1& f, double a, double b, unsigned depth) {
  double err = 0.0, L1 = 0.0;
  double r = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err,
                                                                           &L1);
  if (depth == 0 || err <= kQuadTol * L1 || err < 1e-300) return r;
  double m = 0.5 * (a + b);
  return gk_rec(f, a, m, depth - 1) + gk_rec(f, m, b, depth - 1);
}

}  // namespace impl

inline double integrate_1d(const Fn1& f, double a, double b, unsigned depth = kQuadDepth) {
  if (a == b) return 0.0;
  if (std::isinf(a) || std::isinf(b)) {
    // Map onto a finite interval first.
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, depth,
                                                                         kQuadTol, &err);
  }
  return impl::gk_rec(f, a, b, depth);
}

namespace impl {

inline double box_rec(const FnN& f, std::span<const double> lower, std::span<const double> upper,
                      std::vector<double>& y, std::size_t k) {
  if (k == y.size()) return f(y);
  return integrate_1d(
      [&](double v) {
        y[k] = v;
        return box_rec(f, lower, upper, y, k + 1);
      },
      lower[k], upper[k]);
}

}  // namespace impl

// Integral over a box of dimension <= 4 (infinite bounds allowed); a
// zero-dimensional box is a point evaluation.
inline double integrate_box(const FnN& f, std::span<const double> lower,
                            std::span<const double> upper) {
  if (lower.size() > 4) throw PreconditionError("quadrature supports at most 4 dimensions");
  std::vector<double> y(lower.size());
  return impl::box_rec(f, lower, upper, y, 0);
}

// Integral of f(x) over the open ball |x| < R in R^n, n = 1..3.
inline double integrate_ball(const FnN& f, std::size_t n, double R, unsigned depth = kQuadDepth) {
  if (R <= 0.0) return 0.0;
  std::vector<double> x(n);
  constexpr double pi = std::numbers::pi;
  switch (n) {
    case 1:
      return integrate_1d(
          [&](double v) {
            x[0] = v;
            return f(x);
          },
          -R, R, depth);
    case 2:
      return integrate_1d(
          [&](double r) {
            return r * integrate_1d(
                           [&](double th) {
                             x[0] = r * std::cos(th);
                             x[1] = r * std::sin(th);
                             return f(x);
                           },
                           0.0, 2.0 * pi, depth);
          },
          0.0, R, depth);
    case 3:
      return integrate_1d(
          [&](double r) {
            return r * r * integrate_1d(
                               [&](double th) {
                                 double st = std::sin(th), ct = std::cos(th);
                                 return st * integrate_1d(
                                                 [&](double ph) {
                                                   x[0] = r * st * std::cos(ph);
                                                   x[1] = r * st * std::sin(ph);
                                                   x[2] = r * ct;
                                                   return f(x);
                                                 },
                                                 0.0, 2.0 * pi, depth);
                               },
                               0.0, pi, depth);
          },
          0.0, R, depth);
    default:
      throw PreconditionError("ball quadrature supports n = 1..3");
  }
}

// Integral of f(t', x) over H_lambda = {|x|^2 < t' < lambda}.
inline double integrate_H(const FnN& f, std::size_t n, double lambda,
                          unsigned depth = kQuadDepth) {
  std::vector<double> y(n + 1);
  return integrate_ball(
      [&](std::span<const double> x) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          y[i + 1] = x[i];
          r2 += x[i] * x[i];
        }
        return integrate_1d(
            [&](double tp) {
              y[0] = tp;
              return f(y);
            },
            r2, lambda, depth);
      },
      n, std::sqrt(lambda), depth);
}

// Centered normal density with standard deviation sd.
inline double normal_pdf(double v, double sd) {
  return std::exp(-0.5 * (v / sd) * (v / sd)) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace ckh::detail
