#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ckh/ck/linear.hpp"
#include "ckh/error.hpp"

namespace ckh {

// Geometric (s, t) family: t_i^{1/2} = T q^i (i >= 0) and
// s_j^{1/2} = S q^{j-1} (j >= 1) with T = t_share (1 - q), S = (1 - t_share)(1 - q),
// so that sum s_j^{1/2} + sum t_i^{1/2} = 1.
struct GeometricPattern {
  double q = 0.5;
  double t_share = 0.5;

  double T() const { return t_share * (1.0 - q); }
  double S() const { return (1.0 - t_share) * (1.0 - q); }
  void validate() const;
};

struct WeightScheme {
  GeometricPattern pattern;
  double rho0 = 0.0;
  double rho1 = 0.0;
  double bound_sum = 0.0;  // the certified sum at rho1, < 1/2

  double t_sqrt(std::size_t i) const;
  double s_sqrt(std::size_t j) const;  // j >= 1
  double t(std::size_t i) const { return t_sqrt(i) * t_sqrt(i); }
  double s(std::size_t j) const { return s_sqrt(j) * s_sqrt(j); }
  // A_0 = t_0^{1/4}; A_i = max(t_i^{1/4}, s_i^{1/4}).
  double A(std::size_t i) const;
  std::vector<double> A_vector(std::size_t n) const;  // A_0..A_n
  // sum_{i >= 0} A_i^2 in closed form.
  double sum_A2() const;
};

struct WeightInvariants {
  double sqrt_sum = 0.0;      // truncated sum plus closed-form tail
  double sqrt_sum_error = 0.0;
  double sum_A2 = 0.0;
  double sum_A2_truncated = 0.0;
  bool A0_ok = false;
  bool rho_ok = false;
  bool ok = false;
};
// Checks the scheme over the first `terms` indices (1e-12 tolerance).
WeightInvariants check_weight_invariants(const WeightScheme& w, std::size_t terms = 64);

// sum_{i=0}^n [sum_alpha |a_{i,alpha}| prod_j (rho/A_j^4)^{alpha_j}] rho/A_i^4 with a_0 = b.
double weight_bound_sum(const LinearFirstOrderProblem<double>& p, const WeightScheme& w,
                        double rho);

class NoSchemeError : public Error {
 public:
  NoSchemeError(const std::string& what, double best_sum) : Error(what), best_sum(best_sum) {}
  double best_sum;
};

// Scans rho = 2^{-k}, k = 0..kWeightGridSteps, for the largest rho1 whose
// bound sum is below 1/2; rho0 = 2 rho1.
inline constexpr int kWeightGridSteps = 60;
WeightScheme build_weights(const LinearFirstOrderProblem<double>& p,
                           const GeometricPattern& pattern = {});

// a~_i = a_i / (1 - 2 sum x_i a_i), b~ = b / (1 - 2 sum x_i a_i), to degree cap.
struct TransformedCoefficients {
  std::vector<MonomialSeries<double>> a_tilde;
  MonomialSeries<double> b_tilde;
};
TransformedCoefficients change_of_variables(const LinearFirstOrderProblem<double>& p,
                                            unsigned cap);

}  // namespace ckh
