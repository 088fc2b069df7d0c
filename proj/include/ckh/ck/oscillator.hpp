#pragma once

#include <cstddef>

#include "ckh/ck/cauchy.hpp"
#include "ckh/series/point_oracle.hpp"

namespace ckh {

// u_tt = 2t u_t - sum_{k=2}^n a_k (u_{x_k x_k} - 2 x_k u_{x_k}). The first
// spatial slot x1 plays the role of time in the original system and is
// unused; phi_0 = phi_1 = 0.
template <Coefficient C>
CauchyProblem<C> oscillator_problem(const SequenceRule& a_rule, std::size_t n);

struct SummabilityResult {
  double partial = 0.0;     // sum_{k=2}^K (|a_k b_k| + 2 |a_k c_k|)
  double tail_lower = 0.0;  // bracket for sum_{k>K}
  double tail_upper = 0.0;
  bool converged = false;   // tail bound finite
  double estimate() const { return partial + 0.5 * (tail_lower + tail_upper); }
};

SummabilityResult check_summability(const SequenceRule& a, const SequenceRule& b,
                                    const SequenceRule& c, std::size_t K);

}  // namespace ckh
