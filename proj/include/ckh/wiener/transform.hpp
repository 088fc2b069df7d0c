#pragma once

#include <string>
#include <vector>

#include "ckh/ck/linear.hpp"
#include "ckh/wiener/weights.hpp"

namespace ckh {

// Exponent e in the zeroth-order term t'/A_0^e - sum x_i a~_i / A_i^e of the
// adjoint. Cubic uses e = 3; Gaussian uses e = 2, the value for which the
// Green identity closes against p with coordinate variances A_i^2.
enum class AdjointWeighting { Cubic, Gaussian };
double weighting_exponent(AdjointWeighting w);
std::string to_string(AdjointWeighting w);
AdjointWeighting parse_weighting(const std::string& s);

// G2[W] = -d_t' W + sum d_i (a~_i W) + [-b~ + t'/A_0^e - sum x_i a~_i / A_i^e] W,
// equivalently -d_t' W + sum a~_i d_i W + b' W with
// b' = sum d_i a~_i - b~ + t'/A_0^e - sum x_i a~_i / A_i^e.
struct G2Problem {
  std::vector<MonomialSeries<double>> a_tilde;
  MonomialSeries<double> b_tilde;
  std::vector<double> A;  // A_0..A_n
  double lambda = 0.0;
  AdjointWeighting weighting = AdjointWeighting::Cubic;
  MonomialSeries<double> b_prime_x;  // the part of b' without t'
  double t_coeff = 0.0;              // 1/A_0^e
  // G2[W] = 0 with W(lambda) given, as a forward problem in tau = lambda - t':
  // d_tau W = -sum a~_i d_i W - b'(lambda - tau, x) W. phi is left zero.
  LinearFirstOrderProblem<double> reversed;

  std::size_t n() const { return a_tilde.size(); }
  MonomialSeries<double> b_prime() const;
  // G2[W] over (t', x), truncated to cap.
  MonomialSeries<double> apply(const MonomialSeries<double>& W, unsigned cap) const;
};

G2Problem build_G2(const std::vector<MonomialSeries<double>>& a_tilde,
                   const MonomialSeries<double>& b_tilde, const WeightScheme& w, unsigned cap,
                   double lambda = 0.0, AdjointWeighting weighting = AdjointWeighting::Cubic);

// G1[U] = d_t' U - sum a~_i d_i U - b~ U, truncated to cap.
MonomialSeries<double> apply_G1(const std::vector<MonomialSeries<double>>& a_tilde,
                                const MonomialSeries<double>& b_tilde,
                                const MonomialSeries<double>& U, unsigned cap);

// Solves G2[W] = 0 backward from W(lambda, x) = datum with the CK solver to
// total degree N and returns W as a polynomial in (t', x).
MonomialSeries<double> solve_adjoint(const G2Problem& g2, const MonomialSeries<double>& datum,
                                     unsigned N);

}  // namespace ckh
