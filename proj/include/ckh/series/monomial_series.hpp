#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ckh/error.hpp"
#include "ckh/series/coefficient.hpp"
#include "ckh/series/multi_index.hpp"
#include "ckh/series/variable_space.hpp"

namespace ckh {

using Cap = std::optional<unsigned>;

// Smaller of two optional caps (an unset cap means exact, i.e. no limit).
inline Cap min_cap(Cap a, Cap b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

// Sparse power series sum_alpha c_alpha v^alpha. An unset cap means the stored
// terms are the whole (polynomial) function; a set cap means the coefficients
// are trusted up to that total degree and nothing above it is stored.
template <Coefficient C>
class MonomialSeries {
 public:
  using Map = std::unordered_map<MultiIndex, C, MultiIndexHash>;
  using Term = std::pair<MultiIndex, C>;

  MonomialSeries() = default;
  explicit MonomialSeries(VariableSpace space, Cap cap = std::nullopt)
      : space_(std::move(space)), cap_(cap) {}

  static MonomialSeries constant(VariableSpace space, const C& c) {
    MonomialSeries s(std::move(space));
    s.add_term(MultiIndex{}, c);
    return s;
  }
  static MonomialSeries variable(VariableSpace space, VarIndex var, const C& c = C(1)) {
    MonomialSeries s(std::move(space));
    s.add_term(MultiIndex::unit(var), c);
    return s;
  }

  const VariableSpace& space() const { return space_; }
  const Map& terms() const { return terms_; }
  Cap cap() const { return cap_; }
  bool is_polynomial() const { return !cap_.has_value(); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? C(0) : it->second;
  }

  // Accumulates c into the coefficient of alpha. Terms above the cap are
  // dropped and cancellations erase the entry.
  void add_term(const MultiIndex& alpha, const C& c) {
    if (ckh::is_zero(c)) return;
    if (cap_ && alpha.degree() > *cap_) return;
    check_index(alpha);
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (ckh::is_zero(it->second)) terms_.erase(it);
    }
  }

  void set_coeff(const MultiIndex& alpha, const C& c) {
    if (cap_ && alpha.degree() > *cap_) {
      if (ckh::is_zero(c)) return;
      throw PreconditionError("coefficient above the degree cap");
    }
    check_index(alpha);
    if (ckh::is_zero(c)) {
      terms_.erase(alpha);
    } else {
      terms_[alpha] = c;
    }
  }

  // Lowers (or sets) the cap and discards terms above it. A cap above the
  // current one leaves the series unchanged.
  void restrict_cap(Cap cap);

  // Moves to a compatible space; throws if a used variable would fall outside.
  void set_space(VariableSpace space);

  std::size_t max_degree() const;
  bool involves(VarIndex var) const;

  // Terms in graded-lex order.
  std::vector<Term> sorted_terms() const;

  bool operator==(const MonomialSeries& other) const {
    return space_ == other.space_ && cap_ == other.cap_ && terms_ == other.terms_;
  }
  // Same coefficients, regardless of space labels or caps.
  bool same_terms(const MonomialSeries& other) const { return terms_ == other.terms_; }

 private:
  void check_index(const MultiIndex& alpha) const;

  VariableSpace space_;
  Map terms_;
  Cap cap_;
};

template <Coefficient C>
using Assignment = std::map<VarIndex, MonomialSeries<C>>;

template <Coefficient C>
MonomialSeries<C> add(const MonomialSeries<C>& a, const MonomialSeries<C>& b);
template <Coefficient C>
MonomialSeries<C> sub(const MonomialSeries<C>& a, const MonomialSeries<C>& b);
template <Coefficient C>
MonomialSeries<C> scale(const MonomialSeries<C>& a, const C& c);

// Truncated Cauchy product. The result keeps no cap when both inputs are exact
// and nothing was discarded; otherwise cap = min(cap, input caps).
template <Coefficient C>
MonomialSeries<C> mul(const MonomialSeries<C>& a, const MonomialSeries<C>& b, unsigned cap);

template <Coefficient C>
MonomialSeries<C> truncate(const MonomialSeries<C>& a, unsigned cap);

template <Coefficient C>
MonomialSeries<C> partial_deriv(const MonomialSeries<C>& f, VarIndex i);

// Replaces each assigned variable by its series and truncates to `cap`.
// Unassigned variables pass through. A capped f may only be composed with
// series whose constant term is zero (otherwise infinitely many terms of f
// would feed every output degree); that case throws FormalConvergenceError.
template <Coefficient C>
MonomialSeries<C> substitute(const MonomialSeries<C>& f, const Assignment<C>& assignment,
                             unsigned cap);

// 1/(1-g) to degree cap; g must have zero constant term.
template <Coefficient C>
MonomialSeries<C> reciprocal_one_minus(const MonomialSeries<C>& g, unsigned cap);

template <Coefficient C>
MonomialSeries<C> majorant(const MonomialSeries<C>& f);

template <Coefficient C>
bool is_majorant_of(const MonomialSeries<C>& F, const MonomialSeries<C>& f);

// Value at a dense point (x[i] is variable i); x must cover every used variable.
template <Coefficient C>
C eval_at(const MonomialSeries<C>& f, std::span<const C> x);

// Coefficients 1 on every alpha supported on variables 1..num_vars with
// |alpha| <= cap, over tx_space(num_vars). Exact in degree up to cap.
MonomialSeries<double> geometric_series(std::size_t num_vars, unsigned cap);

// Same evaluation as eval_truncated(geometric_series(x.size(), cap), ...) at
// the point with x_{k+1} = x[k], without materializing the terms: complete homogeneous sums by recursion on
// the variables, O(x.size() * cap).
struct GeometricEval {
  double value;
  double abs_partial;
  // abs_by_degree[d] = sum over |alpha| = d of |x^alpha|.
  std::vector<double> abs_by_degree;
};
GeometricEval geometric_series_eval(std::span<const double> x, unsigned cap);

template <Coefficient C>
MonomialSeries<double> to_double_series(const MonomialSeries<C>& f);
MonomialSeries<Rational> to_rational_series(const MonomialSeries<double>& f);

extern template class MonomialSeries<double>;
extern template class MonomialSeries<Rational>;

}  // namespace ckh
