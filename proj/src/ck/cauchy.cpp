#include "ckh/ck/cauchy.hpp"

#include "ckh/error.hpp"

namespace ckh {

std::vector<WIndex> make_w_index(unsigned m, std::size_t x_vars) {
  std::vector<VarIndex> vars(x_vars);
  for (std::size_t i = 0; i < x_vars; ++i) vars[i] = static_cast<VarIndex>(i + 1);
  std::vector<WIndex> out;
  for (unsigned s = 1; s <= m; ++s) {
    for (unsigned j = 0; j <= s && j < m; ++j) {
      for (auto& beta : enumerate_homogeneous(vars, s - j)) out.push_back({std::move(beta), j});
    }
  }
  return out;
}

std::string w_name(const WIndex& w) {
  std::string s = "D[";
  bool first = true;
  auto part = [&](const std::string& base, unsigned e) {
    if (!first) s += ",";
    first = false;
    s += base;
    if (e != 1) s += "^" + std::to_string(e);
  };
  if (w.j > 0) part("t", w.j);
  for (const auto& [v, e] : w.beta.entries()) part("x" + std::to_string(v), e);
  return s + "]";
}

VariableSpace cauchy_space(unsigned m, std::size_t x_vars) {
  std::vector<std::string> names = tx_space(x_vars).names();
  names.emplace_back("u");
  for (const auto& w : make_w_index(m, x_vars)) names.push_back(w_name(w));
  return VariableSpace(std::move(names));
}

template <Coefficient C>
CauchyProblem<C> make_cauchy_problem(unsigned m, std::size_t x_vars, MonomialSeries<C> f,
                                     std::vector<MonomialSeries<C>> phi, bool f_centered) {
  if (m == 0) throw PreconditionError("time order m must be positive");
  if (x_vars == 0) throw PreconditionError("x_vars must be positive");
  if (phi.size() != m) {
    throw PreconditionError("expected " + std::to_string(m) + " initial functions, got " +
                            std::to_string(phi.size()));
  }
  CauchyProblem<C> p;
  p.m = m;
  p.x_vars = x_vars;
  p.w_index = make_w_index(m, x_vars);
  p.f_centered = f_centered;
  VariableSpace space = cauchy_space(m, x_vars);
  if (!f.space().is_prefix_of(space)) {
    throw SpaceError("right-hand side must live in a prefix of the problem's variable space");
  }
  f.set_space(space);
  p.f = std::move(f);
  VariableSpace tx = tx_space(x_vars);
  for (auto& ph : phi) {
    if (!ph.space().is_prefix_of(tx)) {
      throw SpaceError("initial data must live in a prefix of (t, x1..xn)");
    }
    if (ph.involves(0)) throw PreconditionError("initial data may not depend on t");
    ph.set_space(tx);
  }
  p.phi = std::move(phi);
  return p;
}

template <Coefficient C>
InitialJet<C> derived_initial_values(const CauchyProblem<C>& p) {
  InitialJet<C> jet;
  jet.u0 = p.phi.at(0).coeff(MultiIndex{});
  for (std::size_t k = 0; k < p.w_index.size(); ++k) {
    const WIndex& w = p.w_index[k];
    C v = p.phi.at(w.j).coeff(w.beta) * C(w.beta.factorial());
    jet.w0[k] = v;
  }
  return jet;
}

template <Coefficient C>
MonomialSeries<C> jet_derivative(const MonomialSeries<C>& u, const WIndex& w) {
  MonomialSeries<C> d = u;
  for (unsigned k = 0; k < w.j; ++k) d = partial_deriv(d, 0);
  for (const auto& [v, e] : w.beta.entries()) {
    for (unsigned k = 0; k < e; ++k) d = partial_deriv(d, v);
  }
  return d;
}

namespace {

template <Coefficient C>
Assignment<C> jet_assignment(const CauchyProblem<C>& p, const MonomialSeries<C>& U) {
  Assignment<C> a;
  InitialJet<C> jet;
  if (p.f_centered) jet = derived_initial_values(p);
  auto shifted = [&](MonomialSeries<C> s, const C& c) {
    if (p.f_centered) s.add_term(MultiIndex{}, C(-c));
    return s;
  };
  a.emplace(p.u_var(), shifted(U, jet.u0));
  for (std::size_t k = 0; k < p.w_index.size(); ++k) {
    if (!p.f.involves(p.w_var(k))) continue;
    a.emplace(p.w_var(k), shifted(jet_derivative(U, p.w_index[k]), jet.w0[k]));
  }
  return a;
}

template <Coefficient C>
void check_budget(const MonomialSeries<C>& s, const SolveOptions& opts, const char* what) {
  if (s.size() > opts.term_limit) {
    throw BudgetError(std::string(what) + " has " + std::to_string(s.size()) +
                      " terms, over the limit of " + std::to_string(opts.term_limit));
  }
}

}  // namespace

template <Coefficient C>
SolutionSeries<C> solve(const CauchyProblem<C>& p, unsigned N, const SolveOptions& opts) {
  if (p.m == 0) throw PreconditionError("time order m must be positive");
  if (N < p.m) throw PreconditionError("solve needs N >= m");
  // A capped right-hand side is only trusted to its cap, which bounds the
  // degree the recursion can determine.
  unsigned degree = N;
  if (p.f.cap()) degree = std::min(N, *p.f.cap() + p.m);

  MonomialSeries<C> U(tx_space(p.x_vars));
  C inv_fact(1);
  for (unsigned k = 0; k < p.m; ++k) {
    if (k > 0) inv_fact /= C(k);
    for (const auto& [gamma, c] : p.phi[k].terms()) {
      if (gamma.degree() + k > degree) continue;
      U.add_term(gamma + MultiIndex::unit(0, k), c * inv_fact);
    }
  }

  for (unsigned k = 0; k + p.m <= degree; ++k) {
    MonomialSeries<C> F = substitute(p.f, jet_assignment(p, U), degree - p.m);
    check_budget(F, opts, "composed right-hand side");
    C ratio(1);  // k! / (k+m)!
    for (unsigned i = k + 1; i <= k + p.m; ++i) ratio /= C(i);
    for (const auto& [alpha, c] : F.terms()) {
      if (alpha.exponent(0) != k) continue;
      U.add_term(alpha.with_exponent(0, k + p.m), c * ratio);
    }
    check_budget(U, opts, "solution");
  }

  SolutionSeries<C> out;
  U.restrict_cap(degree);
  out.series = std::move(U);
  out.degree = degree;
  out.residual_degree = degree - p.m;
  return out;
}

template <Coefficient C>
MonomialSeries<C> residual(const CauchyProblem<C>& p, const SolutionSeries<C>& s, unsigned N) {
  if (N > s.degree) throw PreconditionError("residual degree exceeds the solution degree");
  MonomialSeries<C> S(s.series.space());
  for (const auto& [alpha, c] : s.series.terms()) S.add_term(alpha, c);
  MonomialSeries<C> dt = S;
  for (unsigned k = 0; k < p.m; ++k) dt = partial_deriv(dt, 0);
  MonomialSeries<C> F = substitute(p.f, jet_assignment(p, S), N);
  MonomialSeries<C> r = sub(dt, F);
  r.restrict_cap(N);
  r.set_space(tx_space(p.x_vars));
  return r;
}

#define CKH_INSTANTIATE(C)                                                                     \
  template CauchyProblem<C> make_cauchy_problem(unsigned, std::size_t, MonomialSeries<C>,      \
                                                std::vector<MonomialSeries<C>>, bool);         \
  template InitialJet<C> derived_initial_values(const CauchyProblem<C>&);                      \
  template MonomialSeries<C> jet_derivative(const MonomialSeries<C>&, const WIndex&);          \
  template SolutionSeries<C> solve(const CauchyProblem<C>&, unsigned, const SolveOptions&);    \
  template MonomialSeries<C> residual(const CauchyProblem<C>&, const SolutionSeries<C>&,       \
                                      unsigned);

CKH_INSTANTIATE(double)
CKH_INSTANTIATE(Rational)

#undef CKH_INSTANTIATE

}  // namespace ckh
