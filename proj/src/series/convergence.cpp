#include "ckh/series/convergence.hpp"

#include <cmath>

#include "ckh/error.hpp"

namespace ckh {

namespace {

template <Coefficient C>
double monomial_value(const MultiIndex& alpha, const PointOracle& x) {
  double v = 1.0;
  for (const auto& [var, e] : alpha.entries()) v *= std::pow(x.value(var), static_cast<double>(e));
  return v;
}

}  // namespace

template <Coefficient C>
TruncatedValue eval_truncated(const MonomialSeries<C>& f, const PointOracle& x, unsigned cap) {
  TruncatedValue out;
  for (const auto& [alpha, c] : f.sorted_terms()) {
    if (alpha.degree() > cap) break;
    double term = to_double(c) * monomial_value<C>(alpha, x);
    out.value += term;
    out.abs_partial += std::fabs(term);
  }
  return out;
}

template <Coefficient C>
std::vector<double> graded_abs_sums(const MonomialSeries<C>& f, const PointOracle& x,
                                    unsigned cap) {
  std::vector<double> by_degree(cap + 1, 0.0);
  for (const auto& [alpha, c] : f.terms()) {
    if (alpha.degree() > cap) continue;
    by_degree[alpha.degree()] += std::fabs(to_double(c) * monomial_value<C>(alpha, x));
  }
  double running = 0.0;
  for (double& v : by_degree) {
    running += v;
    v = running;
  }
  return by_degree;
}

template <Coefficient C>
ConvergenceCertificate certify_convergence(const MonomialSeries<C>& f, double p,
                                           const PointOracle& x, unsigned cap, double bound) {
  if (!(p > 0.0)) throw PreconditionError("certify_convergence needs p > 0");
  if (x.tail_p != p) throw PreconditionError("witness tail_p does not match p");
  ConvergenceCertificate cert;
  cert.p = p;
  cert.witness = x;
  cert.bound = bound;
  cert.max_degree_checked = cap;
  cert.partial_sums = graded_abs_sums(f, x, cap);
  cert.sums_bounded = true;
  for (std::size_t d = 0; d < cert.partial_sums.size(); ++d) {
    double s = cert.partial_sums[d];
    if (!std::isfinite(s) || s > bound || (d > 0 && s < cert.partial_sums[d - 1])) {
      cert.sums_bounded = false;
    }
  }
  cert.witness_check = check_witness(x);
  cert.witness_ok = cert.witness_check.ok;
  return cert;
}

template TruncatedValue eval_truncated(const MonomialSeries<double>&, const PointOracle&, unsigned);
template TruncatedValue eval_truncated(const MonomialSeries<Rational>&, const PointOracle&,
                                       unsigned);
template std::vector<double> graded_abs_sums(const MonomialSeries<double>&, const PointOracle&,
                                             unsigned);
template std::vector<double> graded_abs_sums(const MonomialSeries<Rational>&, const PointOracle&,
                                             unsigned);
template ConvergenceCertificate certify_convergence(const MonomialSeries<double>&, double,
                                                    const PointOracle&, unsigned, double);
template ConvergenceCertificate certify_convergence(const MonomialSeries<Rational>&, double,
                                                    const PointOracle&, unsigned, double);

}  // namespace ckh
