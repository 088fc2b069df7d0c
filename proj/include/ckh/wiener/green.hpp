#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ckh/wiener/field.hpp"
#include "ckh/wiener/transform.hpp"
#include "ckh/wiener/weights.hpp"

namespace ckh {

// Both sides of the Green identity on H_lambda with the Gaussian p = p_1
// (coordinate variances A_i^2):
//   int_{H_lambda} (W G1[U] - U G2[W]) p = c int_{l_lambda} W U sigma,
// where U vanishes on k_lambda. With the Gaussian weighting the identity is
// exact for polynomial W, U with c = 1/A_0. The cubic weighting and its
// factor lambda/A_0^2 are evaluated alongside as a diagnostic.
struct GreenResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double error_bar = 0.0;
  double boundary_factor = 0.0;  // 1/A_0

  double cubic_lhs = 0.0;
  double cubic_rhs = 0.0;
  double cubic_residual = 0.0;

  // sigma-weighted mean of <F, n>_H over l_lambda for the Holmgren field F,
  // and its closed form lambda/A_0^2.
  double surface_factor = 0.0;
  double surface_factor_expected = 0.0;

  Method method = Method::Quadrature;
  std::size_t samples = 0;
};

// Throws PreconditionError unless U vanishes on k_lambda (checked on probe
// points of the paraboloid to tol times the size of U's coefficients).
void require_vanishing_on_k(const MonomialSeries<double>& U, std::size_t n, double lambda,
                            double tol = 1e-10);

GreenResult green_residual(const MonomialSeries<double>& W, const MonomialSeries<double>& U,
                           const TransformedCoefficients& coeffs, const WeightScheme& w,
                           double lambda, std::size_t n, Method method,
                           std::size_t samples = 1'000'000, std::uint64_t seed = 0);

// int_{l_lambda} f sigma for a polynomial f in (t', x), sigma = sigma_1 with x0 = 0.
double surface_integral_l(const MonomialSeries<double>& f, const std::vector<double>& A,
                          double lambda);

struct HolmgrenOptions {
  double lambda = 0.1;
  std::vector<MultiIndex> degrees;  // over x1..xn
  unsigned solver_degree = 8;
  unsigned cap = 12;                // truncation of a~, b~
  std::optional<MonomialSeries<double>> user_U;
  GeometricPattern pattern;
  AdjointWeighting weighting = AdjointWeighting::Gaussian;
};

struct MomentRow {
  MultiIndex k;
  double moment_direct = 0.0;  // int_{l_lambda} x^k U sigma by quadrature
  double moment_green = 0.0;   // volume side divided by the boundary factor
  double green_lhs = 0.0;
  double difference = 0.0;
  double adjoint_defect = 0.0;  // L2(H_lambda, p) norm of G2[W]
  std::size_t w_terms = 0;
};

struct HolmgrenReport {
  WeightScheme weights;
  std::vector<double> A;
  bool zero_solution = false;
  double boundary_factor = 0.0;
  std::vector<MomentRow> rows;
  double max_abs_moment = 0.0;
  double max_difference = 0.0;
};

// For each requested k: solves the adjoint equation backward from x^k, closes
// the Green identity by quadrature (n <= 3) and compares the implied l_lambda
// moment of U with direct surface quadrature. U is the CK solution of the
// transformed equation when phi = 0 (the zero series) or the user field.
HolmgrenReport holmgren_moment_demo(const LinearFirstOrderProblem<double>& p,
                                    const HolmgrenOptions& opts);

}  // namespace ckh
