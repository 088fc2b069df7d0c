#include "ckh/wiener/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ckh {

void GeometricPattern::validate() const {
  if (!(q > 0.0 && q < 1.0)) throw PreconditionError("pattern ratio q must lie in (0,1)");
  if (!(t_share > 0.0 && t_share < 1.0)) {
    throw PreconditionError("pattern t_share must lie in (0,1)");
  }
}

double WeightScheme::t_sqrt(std::size_t i) const {
  return pattern.T() * std::pow(pattern.q, static_cast<double>(i));
}

double WeightScheme::s_sqrt(std::size_t j) const {
  if (j == 0) throw PreconditionError("s_j starts at j = 1");
  return pattern.S() * std::pow(pattern.q, static_cast<double>(j - 1));
}

double WeightScheme::A(std::size_t i) const {
  if (i == 0) return std::sqrt(t_sqrt(0));
  return std::sqrt(std::max(t_sqrt(i), s_sqrt(i)));
}

std::vector<double> WeightScheme::A_vector(std::size_t n) const {
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = A(i);
  return out;
}

double WeightScheme::sum_A2() const {
  // A_i^2 = max(t_i^{1/2}, s_i^{1/2}) = q^{i-1} max(T q, S) for i >= 1.
  const double q = pattern.q;
  return pattern.T() + std::max(pattern.T() * q, pattern.S()) / (1.0 - q);
}

WeightInvariants check_weight_invariants(const WeightScheme& w, std::size_t terms) {
  WeightInvariants out;
  const double q = w.pattern.q;
  double partial = 0.0, a2 = 0.0;
  for (std::size_t i = 0; i < terms; ++i) {
    partial += w.t_sqrt(i);
    if (i >= 1) partial += w.s_sqrt(i);
    a2 += w.A(i) * w.A(i);
  }
  // Tails beyond the truncation: t from index `terms`, s from `terms`.
  double tail = (w.t_sqrt(terms) + w.s_sqrt(terms)) / (1.0 - q);
  out.sqrt_sum = partial + tail;
  out.sqrt_sum_error = std::fabs(out.sqrt_sum - 1.0);
  out.sum_A2_truncated = a2;
  out.sum_A2 = w.sum_A2();
  out.A0_ok = std::fabs(w.A(0) - std::pow(w.t(0), 0.25)) < 1e-15;
  out.rho_ok = w.rho1 > 0.0 && w.rho1 < w.rho0 && w.bound_sum < 0.5;
  out.ok = out.sqrt_sum_error < 1e-12 && out.sum_A2 < 1.0 && out.A0_ok && out.rho_ok &&
           std::fabs(a2 - out.sum_A2) < 1e-12 + w.A(terms) * w.A(terms) / (1.0 - q);
  return out;
}

namespace {

double majorant_value(const MonomialSeries<double>& f, std::span<const double> z) {
  double total = 0.0;
  for (const auto& [alpha, c] : f.terms()) {
    double term = std::fabs(c);
    for (const auto& [v, e] : alpha.entries()) term *= std::pow(z[v], static_cast<double>(e));
    total += term;
  }
  return total;
}

}  // namespace

double weight_bound_sum(const LinearFirstOrderProblem<double>& p, const WeightScheme& w,
                        double rho) {
  const std::size_t n = p.n();
  std::vector<double> z(n + 1);
  for (std::size_t j = 0; j <= n; ++j) z[j] = rho / std::pow(w.A(j), 4);
  double total = majorant_value(p.b, z) * z[0];
  for (std::size_t i = 1; i <= n; ++i) total += majorant_value(p.a[i - 1], z) * z[i];
  return total;
}

WeightScheme build_weights(const LinearFirstOrderProblem<double>& p,
                           const GeometricPattern& pattern) {
  pattern.validate();
  WeightScheme w;
  w.pattern = pattern;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kWeightGridSteps; ++k) {
    double rho = std::ldexp(1.0, -k);
    double sum = weight_bound_sum(p, w, rho);
    best = std::min(best, sum);
    if (sum < 0.5) {
      w.rho1 = rho;
      w.rho0 = 2.0 * rho;
      w.bound_sum = sum;
      return w;
    }
  }
  std::ostringstream os;
  os << "no geometric weight scheme certifies the bound below 1/2 (best sum " << best << ")";
  throw NoSchemeError(os.str(), best);
}

TransformedCoefficients change_of_variables(const LinearFirstOrderProblem<double>& p,
                                            unsigned cap) {
  if (p.time_dependent) {
    throw PreconditionError("change of variables needs time-independent coefficients");
  }
  const std::size_t n = p.n();
  MonomialSeries<double> g(tx_space(n));
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = MonomialSeries<double>::variable(tx_space(n), static_cast<VarIndex>(i + 1), 2.0);
    g = add(g, mul(xi, p.a[i], cap + 1));
  }
  if (g.coeff(MultiIndex{}) != 0.0) {
    throw PreconditionError("2 sum x_i a_i has a nonzero constant term");
  }
  MonomialSeries<double> R = reciprocal_one_minus(g, cap);
  TransformedCoefficients out;
  for (std::size_t i = 0; i < n; ++i) out.a_tilde.push_back(mul(p.a[i], R, cap));
  out.b_tilde = mul(p.b, R, cap);
  return out;
}

}  // namespace ckh
