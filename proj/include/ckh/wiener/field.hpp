#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ckh/series/monomial_series.hpp"
#include "ckh/wiener/geometry.hpp"
#include "ckh/wiener/sampler.hpp"
#include "ckh/wiener/weights.hpp"

namespace ckh {

// Vector field on B-coordinates y_0..y_{dim-1}, with B-coordinate components
// F_i and Jacobian J_ij = dF_i/dy_j (row-major).
struct VectorField {
  std::size_t dim = 0;
  std::function<void(std::span<const double> y, std::span<double> F)> value;
  std::function<void(std::span<const double> y, std::span<double> J)> jacobian;
  std::string label;

  std::vector<double> operator()(std::span<const double> y) const;
  std::vector<double> jac(std::span<const double> y) const;
  // Trace of DF on H: for B-coordinate components this is sum_i dF_i/dy_i.
  double div(std::span<const double> y) const;
};

VectorField constant_field(std::vector<double> c);
// F(y) = M y + c, M row-major dim x dim.
VectorField linear_field(std::vector<double> M, std::vector<double> c);
// Components are polynomials over the first dim variables.
VectorField polynomial_field(const std::vector<MonomialSeries<double>>& components);

// F(t', x) = (t'/A_0, -a~_1(x)/A_1, ..., -a~_n(x)/A_n).
struct HolmgrenField {
  std::vector<double> A;  // A_0..A_n
  std::vector<MonomialSeries<double>> a_tilde;

  std::size_t n() const { return a_tilde.size(); }
  VectorField field() const;
};
HolmgrenField holmgren_field(const WeightScheme& w, std::vector<MonomialSeries<double>> a_tilde);

enum class Method { MonteCarlo, Quadrature };
std::string to_string(Method m);

using IntegrationDomain = std::variant<Box, Region>;

// Both sides of
//   int_V [div F - <F, y - x0>/t] p_t(x0, dy) = int_{dV} <F, n> sigma_t(x0, dy)
// for a box or for H_lambda (the corner I_lambda carries no measure). The
// pairing is the H one, so <F, y - x0>/t = sum F_i (y_i - x0_i) / (t A_i^2)
// and the boundary flux equals the Euclidean flux of F against p_t.
struct DivergenceResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double error_bar = 0.0;  // MC: stderr of the paired difference; quadrature: 0
  Method method = Method::Quadrature;
  std::size_t samples = 0;
  std::size_t rejected = 0;
};

DivergenceResult divergence_residual(const VectorField& F, const IntegrationDomain& domain,
                                     const GaussianSampler& s, Method method,
                                     std::size_t samples = 1'000'000);

struct FBoundsReport {
  double bstar_sup = 0.0;  // sup of sum F_i^2 / A_i^4 over the closure of H_lambda
  double H_sup = 0.0;      // sup of sum F_i^2 / A_i^2
  double corner_bstar = 0.0;  // value at the top corner (lambda, sqrt(lambda) e_1)
  double trace_norm_integral = 0.0;  // int ||DF||_1 dp
  double trace_norm_stderr = 0.0;
  std::size_t probes = 0;
  bool finite = false;
};

// Trace norm of DF at y as an operator on H.
double trace_norm_DF(const VectorField& F, std::span<const double> A, std::span<const double> y);

FBoundsReport check_F_bounds(const HolmgrenField& F, const Region& region, std::size_t probe_count,
                             std::uint64_t seed);

}  // namespace ckh
