#pragma once

#include <cstddef>
#include <vector>

#include "ckh/series/multi_index.hpp"
#include "ckh/wiener/sampler.hpp"

namespace ckh {

// Probabilists' Hermite He_k(z) / sqrt(k!), orthonormal for N(0, 1).
double hermite_normalized(unsigned k, double z);

// Least-squares projection of f onto prod_i He_{alpha_i}(z_i)/sqrt(alpha_i!),
// z_i = (y_i - center_i) / (sqrt(t) A_i), over |alpha| <= degree. The first
// half of the draws fits the coefficients, the second half measures the
// residual ||f - Pf||_{L^2(p_t)}.
struct HermiteResult {
  unsigned degree = 0;
  std::vector<MultiIndex> basis;  // over variables 0..dim-1
  std::vector<double> coefficients;
  double residual = 0.0;         // holdout RMS
  double residual_stderr = 0.0;  // of the holdout mean squared residual
  double train_residual = 0.0;
  std::size_t count = 0;
};

HermiteResult hermite_projection(const PointFn& f, unsigned degree, const GaussianSampler& s,
                                 std::size_t count);

// Paired comparison on the same holdout draws: mean and stderr of
// r_high^2 - r_low^2. A strict decrease is mean + 3 stderr < 0.
struct HermiteComparison {
  HermiteResult low, high;
  double mean_diff = 0.0;
  double stderr_diff = 0.0;
  bool strictly_decreasing = false;
};

HermiteComparison hermite_compare(const PointFn& f, unsigned low, unsigned high,
                                  const GaussianSampler& s, std::size_t count);

}  // namespace ckh
