#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ckh/wiener/rng.hpp"

namespace ckh {

struct WeightScheme;

// Independent coordinates y_i ~ N(center_i, t * scale_i^2): the Wiener
// measure p_t pushed to the first coordinates of B. Samples are drawn in
// chunks of kChunkSize, chunk c from substream c, so results do not depend on
// the number of worker threads.
struct GaussianSampler {
  std::vector<double> scales;
  std::vector<double> center;  // empty means the origin
  double t = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // selects an independent family of substreams

  GaussianSampler(std::vector<double> scales_, double t_, std::uint64_t seed_);
  // Coordinates (t', x1..xn) with scales A_0..A_n.
  static GaussianSampler from_weights(const WeightScheme& w, std::size_t n, double t,
                                      std::uint64_t seed);

  std::size_t dim() const { return scales.size(); }
  double sd(std::size_t i) const;
  double mean(std::size_t i) const { return center.empty() ? 0.0 : center[i]; }
  GaussianSampler with_stream(std::uint64_t s) const;
  GaussianSampler with_t(double t_) const;
  std::string rng_name() const { return std::string(Xoshiro256::name); }
};

inline constexpr std::size_t kChunkSize = 65536;

// count x dim values, row-major.
std::vector<double> sample(const GaussianSampler& s, std::size_t count);

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t count = 0;     // accepted samples
  std::size_t rejected = 0;  // non-finite values
};

using PointFn = std::function<double(std::span<const double>)>;

// Sample mean and standard error of f over count draws; non-finite values are
// dropped and counted.
Estimate mc_expectation(const PointFn& f, const GaussianSampler& s, std::size_t count);

// Several functions evaluated on the same draws (one Estimate each).
std::vector<Estimate> mc_expectations(const std::vector<PointFn>& fs, const GaussianSampler& s,
                                      std::size_t count);

// f writes `outputs` values per draw; one Estimate per output.
using MultiPointFn = std::function<void(std::span<const double>, std::span<double>)>;
std::vector<Estimate> mc_expectations(const MultiPointFn& f, std::size_t outputs,
                                      const GaussianSampler& s, std::size_t count);

// E exp(eps ||y||^2) under p_t, by importance sampling from the same Gaussian
// with doubled variance. The integral is finite only for
// eps < 1/(2 t max_i A_i^2); `stable` requires that and a light-tailed weight
// profile (largest single contribution below kFerniqueMaxShare of the sum).
inline constexpr double kFerniqueMaxShare = 0.01;
struct FerniqueResult {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double threshold = 0.0;  // 1/(2 t max A^2)
  double max_share = 0.0;
  bool stable = false;
};
FerniqueResult fernique_probe(const GaussianSampler& s, double eps, std::size_t count);

// Measurable set for the scaling law.
struct ScalingSet {
  enum class Kind { Box, Ball, Whole } kind = Kind::Whole;
  std::vector<double> lower, upper;  // Box
  double radius = 0.0;               // Ball centred at the origin
  bool contains(std::span<const double> y) const;
  ScalingSet scaled(double factor) const;  // factor * set
  std::string describe() const;
};

struct ScalingResult {
  Estimate lhs;  // p_{t s}(A)
  Estimate rhs;  // p_t(s^{-1/2} A)
  double diff = 0.0;
  double combined_stderr = 0.0;
  bool pass = false;  // |diff| < 3 combined stderr (or both exact and equal)
};
ScalingResult scaling_check(const GaussianSampler& s, double scale, const ScalingSet& set,
                            std::size_t count);

}  // namespace ckh
