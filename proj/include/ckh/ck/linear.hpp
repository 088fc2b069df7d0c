#pragma once

#include <optional>
#include <vector>

#include "ckh/ck/cauchy.hpp"
#include "ckh/series/convergence.hpp"

namespace ckh {

// d_t u - sum_i a_i d_{x_i} u - b u = 0, u(0, x) = phi(x). All series live
// over (t, x1..xn); without time_dependent they may not mention t.
template <Coefficient C>
struct LinearFirstOrderProblem {
  std::vector<MonomialSeries<C>> a;  // a_1..a_n
  MonomialSeries<C> b;
  MonomialSeries<C> phi;
  bool time_dependent = false;

  std::size_t n() const { return a.size(); }
};

// Normalizes spaces to tx_space(n) and checks the time-independence flag.
template <Coefficient C>
LinearFirstOrderProblem<C> make_linear_problem(std::vector<MonomialSeries<C>> a,
                                               MonomialSeries<C> b, MonomialSeries<C> phi,
                                               bool time_dependent = false);

// (t, x1..xn, w0, w1..wn); w_i sits at n+1+i.
VariableSpace g_space(std::size_t n);

// G(t, x, w) = sum_i a_i(t, x) w_i + w_0 b(t, x).
template <Coefficient C>
MonomialSeries<C> build_G(const LinearFirstOrderProblem<C>& p);

// The same equation as a first-order CauchyProblem. The right-hand side is
// written around the initial jet so that capped coefficients compose.
template <Coefficient C>
CauchyProblem<C> to_cauchy(const LinearFirstOrderProblem<C>& p);

// r = kRadiusScale / (1 + S), S the last certified partial sum of |G| at the
// witness (indexed over g_space, so witness.first is normally 0). Depends on
// (a, b, witness, pnorm, cap) only; phi is never read.
inline constexpr double kRadiusScale = 0.5;

struct RadiusResult {
  std::optional<double> r;
  ConvergenceCertificate certificate;
};

template <Coefficient C>
RadiusResult majorant_radius(const LinearFirstOrderProblem<C>& p, double pnorm,
                             const PointOracle& witness, unsigned cap, double bound = 1e12);

}  // namespace ckh
