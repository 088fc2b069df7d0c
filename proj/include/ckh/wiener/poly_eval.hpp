#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ckh/series/monomial_series.hpp"

namespace ckh {

// A series flattened for repeated evaluation at double points, treating the
// stored terms as a polynomial. Powers are tabulated once per call.
class PolyEval {
 public:
  PolyEval() = default;
  explicit PolyEval(const MonomialSeries<double>& f);

  double operator()(std::span<const double> y) const;
  // Number of leading coordinates a point must provide.
  std::size_t arity() const { return max_exp_.size(); }
  bool is_zero() const { return coeffs_.empty(); }

 private:
  std::vector<double> coeffs_;
  std::vector<std::uint32_t> offsets_;  // term k uses entries_[offsets_[k], offsets_[k+1])
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries_;
  std::vector<std::uint32_t> max_exp_;
};

// A polynomial together with its first partial derivatives in y_0..y_{dim-1}.
struct PolyWithGradient {
  PolyEval value;
  std::vector<PolyEval> grad;

  PolyWithGradient() = default;
  PolyWithGradient(const MonomialSeries<double>& f, std::size_t dim);
};

}  // namespace ckh
