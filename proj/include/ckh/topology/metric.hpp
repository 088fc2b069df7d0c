#pragma once

#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ckh/series/point_oracle.hpp"

namespace ckh {

// p in (0, inf]; p = +inf selects the sup metric.
struct MetricSpec {
  double p = 2.0;
  explicit MetricSpec(double p_);
  static MetricSpec sup() { return MetricSpec(std::numeric_limits<double>::infinity()); }
  bool is_sup() const { return p == std::numeric_limits<double>::infinity(); }
};

// Interval containing the true value when tails are only bounded analytically.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool exact() const { return lower == upper; }
};

// Raw "norm" of x - y: sup |.| for p = inf, (sum |.|^p)^{1/p} for p >= 1 and
// sum |.|^p for p < 1. Coordinates up to tail_index are summed exactly; the
// rest is bounded through the tail rules (Minkowski for p >= 1, the p-sum
// subadditivity for p < 1). Throws TailError when a tail has no finite bound.
Interval norm_difference(const PointOracle& x, const PointOracle& y, const MetricSpec& spec,
                         std::size_t tail_index);

// min{1, norm}.
Interval dist(const PointOracle& x, const PointOracle& y, const MetricSpec& spec,
              std::size_t tail_index);

enum class Tri { False, True, Unknown };
std::string to_string(Tri t);

// Strict ball membership on the unclamped norm; Unknown when the tail bracket
// straddles r.
Tri ball_contains(const PointOracle& center, const PointOracle& candidate, double r,
                  const MetricSpec& spec, std::size_t tail_index);

// Finite-vector conveniences.
double norm(const std::vector<double>& x, const MetricSpec& spec);
double dist(const std::vector<double>& x, const std::vector<double>& y, const MetricSpec& spec);

// Randomized property suite: norm monotonicity in p, the p < 1 comparison,
// and the metric axioms. Each property records its failure count.
struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
};
std::vector<PropertyResult> run_topology_properties(std::size_t trials, std::uint64_t seed);

}  // namespace ckh
