#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ckh/series/multi_index.hpp"

namespace ckh {

// value(i) = c * q^i * i^s, a closed form covering geometric and power-law
// sequences and their products. Tail sums come with an analytic bracket.
struct SequenceRule {
  double c = 0.0;
  double q = 1.0;
  double s = 0.0;

  static SequenceRule zero() { return {0.0, 1.0, 0.0}; }
  static SequenceRule constant(double c) { return {c, 1.0, 0.0}; }
  static SequenceRule geometric(double c, double q) { return {c, q, 0.0}; }
  static SequenceRule power(double c, double s) { return {c, 1.0, s}; }

  double value(std::size_t i) const;

  SequenceRule times(const SequenceRule& other) const { return {c * other.c, q * other.q, s + other.s}; }
  // |value|^p.
  SequenceRule abs_pow(double p) const;
  // 1/|value|^p; needs c != 0 and q != 0.
  SequenceRule reciprocal_pow(double p) const;

  // [lower, upper] for sum_{i > k} |value(i)|; upper is +inf when the series
  // diverges (and then lower is +inf too).
  struct Bracket {
    double lower;
    double upper;
    bool finite() const;
  };
  Bracket tail_bracket(std::size_t k) const;

  // Upper bound on sup_{i > k} |value(i)| (+inf when unbounded).
  double sup_tail(std::size_t k) const;

  std::string describe() const;
};

// A point with finitely many explicit coordinates and a closed-form rule for
// all others. Coordinates are indexed from `first`; the rule covers every
// index >= first that has no explicit value.
struct PointOracle {
  std::map<VarIndex, double> explicit_values;
  SequenceRule tail = SequenceRule::zero();
  VarIndex first = 1;
  // Exponent p of the claim sum_i 1/|x_i|^p < infinity.
  double tail_p = 1.0;
  // Declared bound for that sum; unset means the analytic bound is used.
  std::optional<double> declared_bound;

  // Dense vector (x_first, x_first+1, ...) with a zero tail.
  static PointOracle finite(std::span<const double> values, VarIndex first = 1);
  static PointOracle from_rule(const SequenceRule& rule, double tail_p, VarIndex first = 1);

  double value(VarIndex i) const;
  // Every index >= explicit_end() is governed by the rule.
  std::size_t explicit_end() const;
};

// Numerical check of sum_{i>=first} 1/|x_i|^p up to `check_index` plus the
// analytic tail bound beyond it.
struct WitnessCheck {
  std::vector<double> partial_sums;  // sampled at powers of two and at the end
  double checked_sum = 0.0;
  double tail_upper = 0.0;
  double bound = 0.0;  // declared or analytic bound
  bool monotone = true;
  bool ok = false;
};
WitnessCheck check_witness(const PointOracle& x, std::size_t check_index = 10000);

}  // namespace ckh
