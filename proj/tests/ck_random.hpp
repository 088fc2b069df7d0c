#pragma once

#include <random>

#include "ckh/ck/cauchy.hpp"

// Random polynomial Cauchy problems: m <= 2, x_vars <= 3, right-hand side of
// total degree <= 2 in (t, x, u, jet), polynomial initial data of degree <= 2.
namespace ckh::testing {

inline Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  int p = num(rng);
  if (p == 0) p = 1;
  return Rational(p, den(rng));
}

inline CauchyProblem<Rational> random_problem(std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> mdist(1, 2);
  std::uniform_int_distribution<std::size_t> ndist(1, 3);
  unsigned m = mdist(rng);
  std::size_t n = ndist(rng);
  VariableSpace space = cauchy_space(m, n);
  std::uniform_int_distribution<VarIndex> var(0, static_cast<VarIndex>(space.size() - 1));
  std::uniform_int_distribution<int> deg(0, 2), terms(1, 4);
  MonomialSeries<Rational> f(space);
  for (int k = terms(rng); k > 0; --k) {
    std::vector<MultiIndex::Entry> e;
    for (int d = deg(rng); d > 0; --d) e.emplace_back(var(rng), 1);
    f.add_term(MultiIndex(e), small_rational(rng));
  }
  VariableSpace tx = tx_space(n);
  std::uniform_int_distribution<VarIndex> xvar(1, static_cast<VarIndex>(n));
  std::vector<MonomialSeries<Rational>> phi;
  for (unsigned j = 0; j < m; ++j) {
    MonomialSeries<Rational> ph(tx);
    for (int k = terms(rng); k > 0; --k) {
      std::vector<MultiIndex::Entry> e;
      for (int d = deg(rng); d > 0; --d) e.emplace_back(xvar(rng), 1);
      ph.add_term(MultiIndex(e), small_rational(rng));
    }
    phi.push_back(ph);
  }
  return make_cauchy_problem<Rational>(m, n, f, phi);
}

// d^k_t s at t = 0 equals phi_k up to the degree the truncation keeps.
inline bool initial_data_consistent(const CauchyProblem<Rational>& p,
                                    const SolutionSeries<Rational>& s) {
  for (unsigned k = 0; k < p.m; ++k) {
    MonomialSeries<Rational> d = s.series;
    for (unsigned i = 0; i < k; ++i) d = partial_deriv(d, 0);
    MonomialSeries<Rational> at0(tx_space(p.x_vars));
    for (const auto& [alpha, c] : d.terms()) {
      if (alpha.exponent(0) == 0) at0.add_term(alpha, c);
    }
    MonomialSeries<Rational> expect(tx_space(p.x_vars));
    for (const auto& [alpha, c] : p.phi[k].terms()) {
      if (alpha.degree() + k <= s.degree) expect.add_term(alpha, c);
    }
    if (!at0.same_terms(expect)) return false;
  }
  return true;
}

}  // namespace ckh::testing
