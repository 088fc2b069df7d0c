#include "ckh/wiener/transform.hpp"

#include <cmath>

#include "ckh/ck/cauchy.hpp"

namespace ckh {

double weighting_exponent(AdjointWeighting w) {
  return w == AdjointWeighting::Cubic ? 3.0 : 2.0;
}

std::string to_string(AdjointWeighting w) {
  return w == AdjointWeighting::Cubic ? "cubic" : "gaussian";
}

AdjointWeighting parse_weighting(const std::string& s) {
  if (s == "cubic") return AdjointWeighting::Cubic;
  if (s == "gaussian") return AdjointWeighting::Gaussian;
  throw ParseError("unknown adjoint weighting '" + s + "'");
}

namespace {

MonomialSeries<double> as_polynomial(const MonomialSeries<double>& f) {
  MonomialSeries<double> out(f.space());
  for (const auto& [alpha, c] : f.terms()) out.add_term(alpha, c);
  return out;
}

}  // namespace

MonomialSeries<double> G2Problem::b_prime() const {
  auto t = MonomialSeries<double>::variable(tx_space(n()), 0, t_coeff);
  return add(b_prime_x, t);
}

MonomialSeries<double> G2Problem::apply(const MonomialSeries<double>& W, unsigned cap) const {
  MonomialSeries<double> out = scale(partial_deriv(W, 0), -1.0);
  for (std::size_t i = 0; i < n(); ++i) {
    out = add(out, mul(a_tilde[i], partial_deriv(W, static_cast<VarIndex>(i + 1)), cap));
  }
  out = add(out, mul(b_prime(), W, cap));
  return truncate(out, cap);
}

G2Problem build_G2(const std::vector<MonomialSeries<double>>& a_tilde,
                   const MonomialSeries<double>& b_tilde, const WeightScheme& w, unsigned cap,
                   double lambda, AdjointWeighting weighting) {
  const std::size_t n = a_tilde.size();
  G2Problem g;
  g.a_tilde = a_tilde;
  g.b_tilde = b_tilde;
  g.A = w.A_vector(n);
  g.lambda = lambda;
  g.weighting = weighting;
  const double e = weighting_exponent(weighting);
  g.t_coeff = 1.0 / std::pow(g.A[0], e);
  MonomialSeries<double> bp = scale(b_tilde, -1.0);
  bp.set_space(tx_space(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<VarIndex>(i + 1);
    bp = add(bp, partial_deriv(a_tilde[i], v));
    auto xi = MonomialSeries<double>::variable(tx_space(n), v, -1.0 / std::pow(g.A[i + 1], e));
    bp = add(bp, mul(xi, a_tilde[i], cap));
  }
  g.b_prime_x = truncate(bp, cap);

  std::vector<MonomialSeries<double>> ra;
  for (const auto& a : a_tilde) ra.push_back(scale(a, -1.0));
  // -b'(lambda - tau, x) = -b'_x - lambda t_coeff + t_coeff tau
  MonomialSeries<double> rb = scale(g.b_prime_x, -1.0);
  rb.add_term(MultiIndex{}, -lambda * g.t_coeff);
  rb.add_term(MultiIndex::unit(0), g.t_coeff);
  g.reversed = make_linear_problem(std::move(ra), std::move(rb),
                                   MonomialSeries<double>(tx_space(n)), true);
  return g;
}

MonomialSeries<double> apply_G1(const std::vector<MonomialSeries<double>>& a_tilde,
                                const MonomialSeries<double>& b_tilde,
                                const MonomialSeries<double>& U, unsigned cap) {
  MonomialSeries<double> out = partial_deriv(U, 0);
  for (std::size_t i = 0; i < a_tilde.size(); ++i) {
    out = sub(out, mul(a_tilde[i], partial_deriv(U, static_cast<VarIndex>(i + 1)), cap));
  }
  out = sub(out, mul(b_tilde, U, cap));
  return truncate(out, cap);
}

MonomialSeries<double> solve_adjoint(const G2Problem& g2, const MonomialSeries<double>& datum,
                                     unsigned N) {
  LinearFirstOrderProblem<double> p = g2.reversed;
  p.phi = datum;
  p.phi.set_space(tx_space(g2.n()));
  if (p.phi.involves(0)) throw PreconditionError("adjoint datum must not depend on t'");
  SolutionSeries<double> sol = solve(to_cauchy(p), N);
  // W(t', x) = W_tau(lambda - t', x), with W_tau taken as the polynomial it stores.
  const auto n = g2.n();
  MonomialSeries<double> tau = MonomialSeries<double>::constant(tx_space(n), g2.lambda);
  tau.add_term(MultiIndex::unit(0), -1.0);
  Assignment<double> asg;
  asg.emplace(0, tau);
  return as_polynomial(substitute(as_polynomial(sol.series), asg, N));
}

}  // namespace ckh
