#pragma once

#include <vector>

#include "ckh/series/monomial_series.hpp"
#include "ckh/series/point_oracle.hpp"

namespace ckh {

struct TruncatedValue {
  double value = 0.0;
  // sum_{|alpha| <= cap} |c_alpha x^alpha|
  double abs_partial = 0.0;
};

template <Coefficient C>
TruncatedValue eval_truncated(const MonomialSeries<C>& f, const PointOracle& x, unsigned cap);

// Graded partial sums S_d = sum_{|alpha| <= d} |c_alpha x^alpha|, d = 0..cap.
template <Coefficient C>
std::vector<double> graded_abs_sums(const MonomialSeries<C>& f, const PointOracle& x,
                                    unsigned cap);

// A finite certificate: bounded monotone partial sums at the witness plus a
// numerical check of sum 1/|x_i|^p. Not a proof of convergence.
struct ConvergenceCertificate {
  double p = 1.0;
  PointOracle witness;
  std::vector<double> partial_sums;
  double bound = 0.0;
  unsigned max_degree_checked = 0;
  WitnessCheck witness_check;
  bool sums_bounded = false;
  bool witness_ok = false;
  bool success() const { return sums_bounded && witness_ok; }
};

template <Coefficient C>
ConvergenceCertificate certify_convergence(const MonomialSeries<C>& f, double p,
                                           const PointOracle& x, unsigned cap, double bound);

}  // namespace ckh
