#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ckh/series/monomial_series.hpp"

namespace ckh {

// The derivative d^j_t d^beta_x u, one coordinate of the jet that f reads.
struct WIndex {
  MultiIndex beta;
  unsigned j = 0;
  bool operator==(const WIndex&) const = default;
};

// All (beta, j) with j < m and 1 <= |beta| + j <= m over x1..x_n, ordered by
// |beta| + j, then j, then beta in graded-lex order.
std::vector<WIndex> make_w_index(unsigned m, std::size_t x_vars);

// "D[t^2,x1,x3^2]" style name for a jet coordinate.
std::string w_name(const WIndex& w);

// (t, x1..xn, u, D[...]...): u sits at n+1 and the k-th jet coordinate at n+2+k.
VariableSpace cauchy_space(unsigned m, std::size_t x_vars);

// d^m_t u = f(t, x, u, d^beta_x d^j_t u), u = phi_k at order k < m.
template <Coefficient C>
struct CauchyProblem {
  unsigned m = 1;
  std::size_t x_vars = 1;
  std::vector<WIndex> w_index;
  MonomialSeries<C> f;
  std::vector<MonomialSeries<C>> phi;
  // When set, the u and jet variables of f are deviations from the initial
  // jet, i.e. f is expanded around (u0, w0) as in the classical statement.
  bool f_centered = false;

  VarIndex u_var() const { return static_cast<VarIndex>(x_vars + 1); }
  VarIndex w_var(std::size_t k) const { return static_cast<VarIndex>(x_vars + 2 + k); }
};

// Validates and completes a problem: rejects m = 0, checks that phi has m
// entries over (t, x) and that f lives in a prefix of cauchy_space(m, x_vars).
template <Coefficient C>
CauchyProblem<C> make_cauchy_problem(unsigned m, std::size_t x_vars, MonomialSeries<C> f,
                                     std::vector<MonomialSeries<C>> phi, bool f_centered = false);

template <Coefficient C>
struct InitialJet {
  C u0{};
  std::map<std::size_t, C> w0;  // keyed by position in w_index
};

template <Coefficient C>
InitialJet<C> derived_initial_values(const CauchyProblem<C>& p);

template <Coefficient C>
struct SolutionSeries {
  MonomialSeries<C> series;  // over (t, x), capped at degree
  unsigned degree = 0;
  unsigned residual_degree = 0;
};

struct SolveOptions {
  std::size_t term_limit = 4'000'000;
};

// Layer-by-layer recursion in t: u_{k+m} t^{k+m}/(k+m)! is read off the t^k
// coefficient of f(t, x, U, dU) with U known to t-order k+m-1. Every term of
// the result has total (t, x)-degree <= N.
template <Coefficient C>
SolutionSeries<C> solve(const CauchyProblem<C>& p, unsigned N, const SolveOptions& opts = {});

// d^m_t s - f(t, x, s, ...) truncated to degree N, with s taken as the
// polynomial it stores.
template <Coefficient C>
MonomialSeries<C> residual(const CauchyProblem<C>& p, const SolutionSeries<C>& s, unsigned N);

// d^j_t d^beta_x of a (t, x) series.
template <Coefficient C>
MonomialSeries<C> jet_derivative(const MonomialSeries<C>& u, const WIndex& w);

}  // namespace ckh
