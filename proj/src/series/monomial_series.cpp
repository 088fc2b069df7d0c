#include "ckh/series/monomial_series.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ckh {

template <Coefficient C>
void MonomialSeries<C>::check_index(const MultiIndex& alpha) const {
  auto v = alpha.max_variable();
  if (v && *v >= space_.size()) {
    throw SpaceError("monomial " + alpha.to_string() + " uses a variable outside a space of " +
                     std::to_string(space_.size()));
  }
}

template <Coefficient C>
void MonomialSeries<C>::restrict_cap(Cap cap) {
  Cap next = min_cap(cap_, cap);
  if (next == cap_) return;
  cap_ = next;
  std::erase_if(terms_, [&](const auto& kv) { return kv.first.degree() > *cap_; });
}

template <Coefficient C>
void MonomialSeries<C>::set_space(VariableSpace space) {
  for (const auto& [alpha, c] : terms_) {
    auto v = alpha.max_variable();
    if (v && *v >= space.size()) {
      throw SpaceError("cannot move series to a smaller space: variable " +
                       space_.name(*v) + " is used");
    }
  }
  space_ = std::move(space);
}

template <Coefficient C>
std::size_t MonomialSeries<C>::max_degree() const {
  std::size_t d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max<std::size_t>(d, alpha.degree());
  return d;
}

template <Coefficient C>
bool MonomialSeries<C>::involves(VarIndex var) const {
  for (const auto& [alpha, c] : terms_) {
    if (alpha.exponent(var) > 0) return true;
  }
  return false;
}

template <Coefficient C>
std::vector<typename MonomialSeries<C>::Term> MonomialSeries<C>::sorted_terms() const {
  std::vector<Term> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  return out;
}

template class MonomialSeries<double>;
template class MonomialSeries<Rational>;

namespace {

template <Coefficient C>
MonomialSeries<C> add_scaled(const MonomialSeries<C>& a, const MonomialSeries<C>& b,
                             const C& factor) {
  MonomialSeries<C> r(unify(a.space(), b.space()), min_cap(a.cap(), b.cap()));
  for (const auto& [alpha, c] : a.terms()) r.add_term(alpha, c);
  for (const auto& [alpha, c] : b.terms()) r.add_term(alpha, c * factor);
  return r;
}

struct ByDegree {
  template <class T>
  bool operator()(const T& a, const T& b) const {
    return a.first.degree() < b.first.degree();
  }
};

// Product truncated to `cap`; sets *truncated when a nonzero-index pair was
// skipped for exceeding the cap.
template <Coefficient C>
MonomialSeries<C> mul_impl(const MonomialSeries<C>& a, const MonomialSeries<C>& b, unsigned cap,
                           bool* truncated) {
  MonomialSeries<C> r(unify(a.space(), b.space()), cap);
  if (a.is_zero() || b.is_zero()) return r;
  using Term = typename MonomialSeries<C>::Term;
  std::vector<Term> bt(b.terms().begin(), b.terms().end());
  std::sort(bt.begin(), bt.end(), ByDegree{});
  for (const auto& [alpha, ca] : a.terms()) {
    if (alpha.degree() > cap) {
      *truncated = true;
      continue;
    }
    for (const auto& [beta, cb] : bt) {
      if (alpha.degree() + beta.degree() > cap) {
        *truncated = true;
        break;
      }
      r.add_term(alpha + beta, ca * cb);
    }
  }
  return r;
}

template <Coefficient C>
std::uint64_t min_degree(const MonomialSeries<C>& s) {
  std::uint64_t d = UINT64_MAX;
  for (const auto& [alpha, c] : s.terms()) d = std::min(d, alpha.degree());
  return d;
}

}  // namespace

template <Coefficient C>
MonomialSeries<C> add(const MonomialSeries<C>& a, const MonomialSeries<C>& b) {
  return add_scaled(a, b, C(1));
}

template <Coefficient C>
MonomialSeries<C> sub(const MonomialSeries<C>& a, const MonomialSeries<C>& b) {
  return add_scaled(a, b, C(-1));
}

template <Coefficient C>
MonomialSeries<C> scale(const MonomialSeries<C>& a, const C& c) {
  MonomialSeries<C> r(a.space(), a.cap());
  for (const auto& [alpha, v] : a.terms()) r.add_term(alpha, v * c);
  return r;
}

template <Coefficient C>
MonomialSeries<C> mul(const MonomialSeries<C>& a, const MonomialSeries<C>& b, unsigned cap) {
  bool truncated = false;
  MonomialSeries<C> r = mul_impl(a, b, cap, &truncated);
  Cap result_cap = min_cap(a.cap(), b.cap());
  if (truncated) result_cap = min_cap(result_cap, cap);
  MonomialSeries<C> out(r.space(), result_cap);
  for (const auto& [alpha, c] : r.terms()) out.add_term(alpha, c);
  return out;
}

template <Coefficient C>
MonomialSeries<C> truncate(const MonomialSeries<C>& a, unsigned cap) {
  MonomialSeries<C> r = a;
  if (a.max_degree() > cap || a.cap()) r.restrict_cap(cap);
  return r;
}

template <Coefficient C>
MonomialSeries<C> partial_deriv(const MonomialSeries<C>& f, VarIndex i) {
  Cap cap = f.cap();
  if (cap && *cap > 0) cap = *cap - 1;
  MonomialSeries<C> r(f.space(), cap);
  for (const auto& [alpha, c] : f.terms()) {
    Exponent e = alpha.exponent(i);
    if (e == 0) continue;
    r.add_term(*alpha.lowered(i), c * C(e));
  }
  return r;
}

template <Coefficient C>
MonomialSeries<C> substitute(const MonomialSeries<C>& f, const Assignment<C>& assignment,
                             unsigned cap) {
  VariableSpace space = f.space();
  std::vector<VarIndex> vars;
  std::map<VarIndex, std::uint64_t> order;
  Cap result_cap = f.cap();
  bool truncated = false;
  for (const auto& [v, g] : assignment) {
    space = unify(space, g.space());
    vars.push_back(v);
    if (!f.involves(v)) continue;
    if (f.cap() && !is_zero(g.coeff(MultiIndex{}))) {
      throw FormalConvergenceError("capped series composed with a substitution for " +
                                   f.space().name(v) + " that has a nonzero constant term");
    }
    result_cap = min_cap(result_cap, g.cap());
    order[v] = g.is_zero() ? UINT64_MAX : min_degree(g);
  }

  // Group the terms of f by their substituted part.
  std::unordered_map<MultiIndex, MonomialSeries<C>, MultiIndexHash> groups;
  for (const auto& [alpha, c] : f.terms()) {
    auto [beta, gamma] = alpha.split(vars);
    auto it = groups.try_emplace(beta, MonomialSeries<C>(f.space())).first;
    it->second.add_term(gamma, c);
  }

  std::unordered_map<MultiIndex, MonomialSeries<C>, MultiIndexHash> powers;
  powers.emplace(MultiIndex{}, MonomialSeries<C>::constant(space, C(1)));
  // prod_v g_v^{beta_v}, built one factor at a time and memoized.
  auto power_product = [&](auto&& self, const MultiIndex& beta) -> const MonomialSeries<C>& {
    if (auto it = powers.find(beta); it != powers.end()) return it->second;
    VarIndex v = *beta.max_variable();
    const MonomialSeries<C>& prev = self(self, *beta.lowered(v));
    MonomialSeries<C> next = mul_impl(prev, assignment.at(v), cap, &truncated);
    return powers.emplace(beta, std::move(next)).first->second;
  };

  MonomialSeries<C> result(space, cap);
  for (const auto& [beta, rest] : groups) {
    std::uint64_t low = min_degree(rest);
    bool zero_power = false;
    for (const auto& [v, e] : beta.entries()) {
      if (order[v] == UINT64_MAX) {
        zero_power = true;
        break;
      }
      low += order[v] * e;
    }
    if (zero_power) continue;
    if (low > cap) {
      truncated = true;
      continue;
    }
    const MonomialSeries<C>& p = power_product(power_product, beta);
    MonomialSeries<C> term = mul_impl(rest, p, cap, &truncated);
    for (const auto& [alpha, c] : term.terms()) result.add_term(alpha, c);
  }

  if (truncated) result_cap = min_cap(result_cap, cap);
  MonomialSeries<C> out(space, result_cap);
  for (const auto& [alpha, c] : result.terms()) out.add_term(alpha, c);
  return out;
}

template <Coefficient C>
MonomialSeries<C> reciprocal_one_minus(const MonomialSeries<C>& g, unsigned cap) {
  if (!is_zero(g.coeff(MultiIndex{}))) {
    throw PreconditionError("reciprocal_one_minus needs a zero constant term");
  }
  auto one = MonomialSeries<C>::constant(g.space(), C(1));
  if (g.is_zero()) return one;
  // Horner: R = 1 + g R, each pass fixing one more degree.
  MonomialSeries<C> r = one;
  bool truncated = false;
  for (unsigned k = 0; k < cap; ++k) {
    r = add(one, mul_impl(g, r, cap, &truncated));
  }
  MonomialSeries<C> out(g.space(), min_cap(g.cap(), cap));
  for (const auto& [alpha, c] : r.terms()) out.add_term(alpha, c);
  return out;
}

template <Coefficient C>
MonomialSeries<C> majorant(const MonomialSeries<C>& f) {
  MonomialSeries<C> r(f.space(), f.cap());
  for (const auto& [alpha, c] : f.terms()) r.add_term(alpha, abs_value(c));
  return r;
}

template <Coefficient C>
bool is_majorant_of(const MonomialSeries<C>& F, const MonomialSeries<C>& f) {
  unify(F.space(), f.space());
  for (const auto& [alpha, c] : F.terms()) {
    if (c < 0) return false;
  }
  for (const auto& [alpha, c] : f.terms()) {
    if (abs_value(c) > F.coeff(alpha)) return false;
  }
  return true;
}

template <Coefficient C>
C eval_at(const MonomialSeries<C>& f, std::span<const C> x) {
  C total(0);
  for (const auto& [alpha, c] : f.terms()) {
    C term = c;
    for (const auto& [v, e] : alpha.entries()) {
      if (v >= x.size()) throw PreconditionError("point does not cover variable " +
                                                 std::to_string(v));
      for (Exponent k = 0; k < e; ++k) term *= x[v];
    }
    total += term;
  }
  return total;
}

MonomialSeries<double> geometric_series(std::size_t num_vars, unsigned cap) {
  MonomialSeries<double> r(tx_space(num_vars), cap);
  for (auto& alpha : enumerate_multiindices(num_vars, cap)) r.add_term(alpha, 1.0);
  return r;
}

GeometricEval geometric_series_eval(std::span<const double> x, unsigned cap) {
  // h[d] holds the complete homogeneous sum of degree d over the variables
  // seen so far; adding x_j gives h'[d] = h[d] + x_j h'[d-1].
  std::vector<double> h(cap + 1, 0.0);
  std::vector<double> habs(cap + 1, 0.0);
  h[0] = habs[0] = 1.0;
  for (double xj : x) {
    double a = std::fabs(xj);
    for (unsigned d = 1; d <= cap; ++d) {
      h[d] += xj * h[d - 1];
      habs[d] += a * habs[d - 1];
    }
  }
  GeometricEval out{0.0, 0.0, habs};
  for (unsigned d = 0; d <= cap; ++d) {
    out.value += h[d];
    out.abs_partial += habs[d];
  }
  return out;
}

template <Coefficient C>
MonomialSeries<double> to_double_series(const MonomialSeries<C>& f) {
  MonomialSeries<double> r(f.space(), f.cap());
  for (const auto& [alpha, c] : f.terms()) r.add_term(alpha, to_double(c));
  return r;
}

MonomialSeries<Rational> to_rational_series(const MonomialSeries<double>& f) {
  MonomialSeries<Rational> r(f.space(), f.cap());
  for (const auto& [alpha, c] : f.terms()) r.add_term(alpha, Rational(c));
  return r;
}

#define CKH_INSTANTIATE(C)                                                                       \
  template MonomialSeries<C> add(const MonomialSeries<C>&, const MonomialSeries<C>&);            \
  template MonomialSeries<C> sub(const MonomialSeries<C>&, const MonomialSeries<C>&);            \
  template MonomialSeries<C> scale(const MonomialSeries<C>&, const C&);                          \
  template MonomialSeries<C> mul(const MonomialSeries<C>&, const MonomialSeries<C>&, unsigned);  \
  template MonomialSeries<C> truncate(const MonomialSeries<C>&, unsigned);                       \
  template MonomialSeries<C> partial_deriv(const MonomialSeries<C>&, VarIndex);                  \
  template MonomialSeries<C> substitute(const MonomialSeries<C>&, const Assignment<C>&,          \
                                        unsigned);                                               \
  template MonomialSeries<C> reciprocal_one_minus(const MonomialSeries<C>&, unsigned);           \
  template MonomialSeries<C> majorant(const MonomialSeries<C>&);                                 \
  template bool is_majorant_of(const MonomialSeries<C>&, const MonomialSeries<C>&);              \
  template C eval_at(const MonomialSeries<C>&, std::span<const C>);                              \
  template MonomialSeries<double> to_double_series(const MonomialSeries<C>&);

CKH_INSTANTIATE(double)
CKH_INSTANTIATE(Rational)

#undef CKH_INSTANTIATE

}  // namespace ckh
