#include "ckh/ck/oscillator.hpp"

#include <algorithm>
#include <cmath>

#include "ckh/error.hpp"

namespace ckh {

namespace {

std::size_t find_w(const std::vector<WIndex>& index, const WIndex& w) {
  auto it = std::find(index.begin(), index.end(), w);
  if (it == index.end()) throw PreconditionError("jet coordinate " + w_name(w) + " not present");
  return static_cast<std::size_t>(it - index.begin());
}

}  // namespace

template <Coefficient C>
CauchyProblem<C> oscillator_problem(const SequenceRule& a_rule, std::size_t n) {
  if (n < 2) throw PreconditionError("oscillator problem needs n >= 2");
  const unsigned m = 2;
  VariableSpace space = cauchy_space(m, n);
  auto w_index = make_w_index(m, n);
  auto wvar = [&](const WIndex& w) { return static_cast<VarIndex>(n + 2 + find_w(w_index, w)); };

  MonomialSeries<C> f(space);
  f.add_term(MultiIndex::unit(0) + MultiIndex::unit(wvar({MultiIndex{}, 1})), C(2));
  for (std::size_t k = 2; k <= n; ++k) {
    C ak = from_double<C>(a_rule.value(k));
    if (is_zero(ak)) continue;
    VarIndex xk = static_cast<VarIndex>(k);
    f.add_term(MultiIndex::unit(wvar({MultiIndex::unit(xk, 2), 0})), C(-ak));
    f.add_term(MultiIndex::unit(xk) + MultiIndex::unit(wvar({MultiIndex::unit(xk), 0})),
               C(2) * ak);
  }
  VariableSpace tx = tx_space(n);
  return make_cauchy_problem<C>(m, n, std::move(f), {MonomialSeries<C>(tx), MonomialSeries<C>(tx)});
}

SummabilityResult check_summability(const SequenceRule& a, const SequenceRule& b,
                                    const SequenceRule& c, std::size_t K) {
  SummabilityResult out;
  // Summed from the far end so the small terms are not swallowed.
  for (std::size_t k = K; k >= 2; --k) {
    double ak = std::fabs(a.value(k));
    out.partial += ak * std::fabs(b.value(k)) + 2.0 * ak * std::fabs(c.value(k));
  }
  auto ab = a.times(b).tail_bracket(std::max<std::size_t>(K, 1));
  auto ac = a.times(c).tail_bracket(std::max<std::size_t>(K, 1));
  out.tail_lower = ab.lower + 2.0 * ac.lower;
  out.tail_upper = ab.upper + 2.0 * ac.upper;
  out.converged = std::isfinite(out.tail_upper);
  return out;
}

template CauchyProblem<double> oscillator_problem<double>(const SequenceRule&, std::size_t);
template CauchyProblem<Rational> oscillator_problem<Rational>(const SequenceRule&, std::size_t);

}  // namespace ckh
