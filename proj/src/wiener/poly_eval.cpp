#include "ckh/wiener/poly_eval.hpp"

#include <algorithm>

#include "ckh/error.hpp"

namespace ckh {

PolyEval::PolyEval(const MonomialSeries<double>& f) {
  offsets_.push_back(0);
  for (const auto& [alpha, c] : f.sorted_terms()) {
    coeffs_.push_back(c);
    for (const auto& [v, e] : alpha.entries()) {
      entries_.emplace_back(v, e);
      if (v >= max_exp_.size()) max_exp_.resize(v + 1, 0);
      max_exp_[v] = std::max(max_exp_[v], e);
    }
    offsets_.push_back(static_cast<std::uint32_t>(entries_.size()));
  }
}

double PolyEval::operator()(std::span<const double> y) const {
  if (coeffs_.empty()) return 0.0;
  if (y.size() < max_exp_.size()) throw PreconditionError("point has too few coordinates");
  thread_local std::vector<double> table;
  thread_local std::vector<std::size_t> base;
  base.assign(max_exp_.size() + 1, 0);
  for (std::size_t v = 0; v < max_exp_.size(); ++v) base[v + 1] = base[v] + max_exp_[v] + 1;
  table.resize(base.back());
  for (std::size_t v = 0; v < max_exp_.size(); ++v) {
    double* row = table.data() + base[v];
    row[0] = 1.0;
    for (std::uint32_t e = 1; e <= max_exp_[v]; ++e) row[e] = row[e - 1] * y[v];
  }
  double total = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    double term = coeffs_[k];
    for (std::uint32_t q = offsets_[k]; q < offsets_[k + 1]; ++q) {
      term *= table[base[entries_[q].first] + entries_[q].second];
    }
    total += term;
  }
  return total;
}

PolyWithGradient::PolyWithGradient(const MonomialSeries<double>& f, std::size_t dim)
    : value(f) {
  for (std::size_t i = 0; i < dim; ++i) {
    grad.emplace_back(partial_deriv(f, static_cast<VarIndex>(i)));
  }
}

}  // namespace ckh
