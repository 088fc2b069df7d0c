#include "ckh/ck/linear.hpp"

#include "ckh/error.hpp"

namespace ckh {

namespace {

template <Coefficient C>
void normalize(MonomialSeries<C>& s, const VariableSpace& tx, bool allow_t, const char* what) {
  if (!s.space().is_prefix_of(tx)) {
    throw SpaceError(std::string(what) + " must live in a prefix of (t, x1..xn)");
  }
  if (!allow_t && s.involves(0)) {
    throw PreconditionError(std::string(what) + " depends on t but the problem is autonomous");
  }
  s.set_space(tx);
}

}  // namespace

template <Coefficient C>
LinearFirstOrderProblem<C> make_linear_problem(std::vector<MonomialSeries<C>> a,
                                               MonomialSeries<C> b, MonomialSeries<C> phi,
                                               bool time_dependent) {
  if (a.empty()) throw PreconditionError("linear problem needs at least one coefficient a_i");
  VariableSpace tx = tx_space(a.size());
  for (auto& ai : a) normalize(ai, tx, time_dependent, "coefficient a_i");
  normalize(b, tx, time_dependent, "coefficient b");
  normalize(phi, tx, false, "initial data phi");
  return {std::move(a), std::move(b), std::move(phi), time_dependent};
}

VariableSpace g_space(std::size_t n) {
  std::vector<std::string> names = tx_space(n).names();
  for (std::size_t i = 0; i <= n; ++i) names.push_back("w" + std::to_string(i));
  return VariableSpace(std::move(names));
}

template <Coefficient C>
MonomialSeries<C> build_G(const LinearFirstOrderProblem<C>& p) {
  const std::size_t n = p.n();
  VariableSpace gs = g_space(n);
  auto w = [&](std::size_t i) { return static_cast<VarIndex>(n + 1 + i); };
  Cap cap = p.b.cap();
  for (const auto& ai : p.a) cap = min_cap(cap, ai.cap());
  MonomialSeries<C> G(gs);
  for (const auto& [alpha, c] : p.b.terms()) G.add_term(alpha + MultiIndex::unit(w(0)), c);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [alpha, c] : p.a[i].terms()) G.add_term(alpha + MultiIndex::unit(w(i + 1)), c);
  }
  // Coefficients trusted to degree d make G trusted to d + 1 (it is linear in w).
  if (cap) G.restrict_cap(*cap + 1);
  return G;
}

template <Coefficient C>
CauchyProblem<C> to_cauchy(const LinearFirstOrderProblem<C>& p) {
  const std::size_t n = p.n();
  VariableSpace space = cauchy_space(1, n);
  // With m = 1 the jet coordinates are D[x1]..D[xn] in order.
  const VarIndex u = static_cast<VarIndex>(n + 1);
  auto w = [&](std::size_t i) { return static_cast<VarIndex>(n + 1 + i); };
  C u0 = p.phi.coeff(MultiIndex{});
  Cap cap = p.b.cap();
  for (const auto& ai : p.a) cap = min_cap(cap, ai.cap());
  MonomialSeries<C> f(space);
  // b (u0 + u~) + sum a_i (w0_i + w~_i)
  for (const auto& [alpha, c] : p.b.terms()) {
    f.add_term(alpha + MultiIndex::unit(u), c);
    f.add_term(alpha, c * u0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    C w0 = p.phi.coeff(MultiIndex::unit(static_cast<VarIndex>(i + 1)));
    for (const auto& [alpha, c] : p.a[i].terms()) {
      f.add_term(alpha + MultiIndex::unit(w(i + 1)), c);
      f.add_term(alpha, c * w0);
    }
  }
  if (cap) f.restrict_cap(*cap);
  return make_cauchy_problem<C>(1, n, std::move(f), {p.phi}, true);
}

template <Coefficient C>
RadiusResult majorant_radius(const LinearFirstOrderProblem<C>& p, double pnorm,
                             const PointOracle& witness, unsigned cap, double bound) {
  if (!(pnorm >= 1.0)) throw PreconditionError("majorant_radius needs pnorm >= 1");
  MonomialSeries<C> G = majorant(build_G(p));
  PointOracle x = witness;
  x.tail_p = pnorm;
  RadiusResult out{std::nullopt, certify_convergence(G, pnorm, x, cap, bound)};
  if (out.certificate.success()) {
    double S = out.certificate.partial_sums.back();
    out.r = kRadiusScale / (1.0 + S);
  }
  return out;
}

#define CKH_INSTANTIATE(C)                                                                    \
  template LinearFirstOrderProblem<C> make_linear_problem(                                    \
      std::vector<MonomialSeries<C>>, MonomialSeries<C>, MonomialSeries<C>, bool);            \
  template MonomialSeries<C> build_G(const LinearFirstOrderProblem<C>&);                      \
  template CauchyProblem<C> to_cauchy(const LinearFirstOrderProblem<C>&);                     \
  template RadiusResult majorant_radius(const LinearFirstOrderProblem<C>&, double,            \
                                        const PointOracle&, unsigned, double);

CKH_INSTANTIATE(double)
CKH_INSTANTIATE(Rational)

#undef CKH_INSTANTIATE

}  // namespace ckh
