#include "ckh/wiener/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "ckh/error.hpp"
#include "ckh/wiener/weights.hpp"

namespace ckh {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
  if (stream == 0) return seed;
  std::uint64_t z = seed ^ (stream * 0xd1b54a32d192ed03ULL);
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  return z ^ (z >> 33);
}

// Running mean / sum of squared deviations, merged pairwise in chunk order.
struct Moments {
  double n = 0.0, mean = 0.0, m2 = 0.0;
  std::size_t rejected = 0;
  void push(double v) {
    if (!std::isfinite(v)) {
      ++rejected;
      return;
    }
    n += 1.0;
    double d = v - mean;
    mean += d / n;
    m2 += d * (v - mean);
  }
  void merge(const Moments& o) {
    rejected += o.rejected;
    if (o.n == 0.0) return;
    double total = n + o.n;
    double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
  Estimate estimate() const {
    Estimate e;
    e.mean = mean;
    e.count = static_cast<std::size_t>(n);
    e.rejected = rejected;
    e.stderr_ = n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
    return e;
  }
};

// Runs body(chunk, first, last) for every chunk, spread over worker threads;
// each chunk writes only its own slot so the reduction order is fixed.
template <class Body>
void for_each_chunk(std::size_t count, Body&& body) {
  std::size_t chunks = (count + kChunkSize - 1) / kChunkSize;
  std::size_t workers =
      std::min<std::size_t>(chunks, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      body(c, c * kChunkSize, std::min(count, (c + 1) * kChunkSize));
    }
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers) {
        body(c, c * kChunkSize, std::min(count, (c + 1) * kChunkSize));
      }
    });
  }
  for (auto& th : pool) th.join();
}

// Draws the points of one chunk into buf (rows of dim values).
void draw_chunk(const GaussianSampler& s, std::size_t chunk, std::size_t rows, double* buf) {
  Xoshiro256 gen = Xoshiro256::substream(mix(s.seed, s.stream), chunk);
  std::normal_distribution<double> normal;
  const std::size_t d = s.dim();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < d; ++i) buf[r * d + i] = s.mean(i) + s.sd(i) * normal(gen);
  }
}

std::vector<Estimate> run_estimates(const MultiPointFn& f, std::size_t outputs,
                                    const GaussianSampler& s, std::size_t count) {
  std::size_t chunks = (count + kChunkSize - 1) / kChunkSize;
  std::vector<std::vector<Moments>> partial(chunks, std::vector<Moments>(outputs));
  for_each_chunk(count, [&](std::size_t c, std::size_t first, std::size_t last) {
    std::vector<double> buf((last - first) * s.dim());
    std::vector<double> vals(outputs);
    draw_chunk(s, c, last - first, buf.data());
    for (std::size_t r = 0; r < last - first; ++r) {
      std::span<const double> y(buf.data() + r * s.dim(), s.dim());
      f(y, vals);
      for (std::size_t k = 0; k < outputs; ++k) partial[c][k].push(vals[k]);
    }
  });
  std::vector<Estimate> out;
  for (std::size_t k = 0; k < outputs; ++k) {
    Moments total;
    for (std::size_t c = 0; c < chunks; ++c) total.merge(partial[c][k]);
    out.push_back(total.estimate());
  }
  return out;
}

}  // namespace

GaussianSampler::GaussianSampler(std::vector<double> scales_, double t_, std::uint64_t seed_)
    : scales(std::move(scales_)), t(t_), seed(seed_) {
  if (!(t > 0.0)) throw PreconditionError("sampler variance t must be positive");
  if (scales.empty()) throw PreconditionError("sampler needs at least one coordinate");
  for (double a : scales) {
    if (!(a > 0.0)) throw PreconditionError("sampler scales must be positive");
  }
}

GaussianSampler GaussianSampler::from_weights(const WeightScheme& w, std::size_t n, double t,
                                              std::uint64_t seed) {
  return GaussianSampler(w.A_vector(n), t, seed);
}

double GaussianSampler::sd(std::size_t i) const { return std::sqrt(t) * scales[i]; }

GaussianSampler GaussianSampler::with_stream(std::uint64_t s) const {
  GaussianSampler g = *this;
  g.stream = s;
  return g;
}

GaussianSampler GaussianSampler::with_t(double t_) const {
  if (!(t_ > 0.0)) throw PreconditionError("sampler variance t must be positive");
  GaussianSampler g = *this;
  g.t = t_;
  return g;
}

std::vector<double> sample(const GaussianSampler& s, std::size_t count) {
  std::vector<double> out(count * s.dim());
  for_each_chunk(count, [&](std::size_t c, std::size_t first, std::size_t last) {
    draw_chunk(s, c, last - first, out.data() + first * s.dim());
  });
  return out;
}

Estimate mc_expectation(const PointFn& f, const GaussianSampler& s, std::size_t count) {
  return mc_expectations(std::vector<PointFn>{f}, s, count).front();
}

std::vector<Estimate> mc_expectations(const std::vector<PointFn>& fs, const GaussianSampler& s,
                                      std::size_t count) {
  return run_estimates(
      [&](std::span<const double> y, std::span<double> out) {
        for (std::size_t k = 0; k < fs.size(); ++k) out[k] = fs[k](y);
      },
      fs.size(), s, count);
}

std::vector<Estimate> mc_expectations(const MultiPointFn& f, std::size_t outputs,
                                      const GaussianSampler& s, std::size_t count) {
  return run_estimates(f, outputs, s, count);
}

FerniqueResult fernique_probe(const GaussianSampler& s, double eps, std::size_t count) {
  if (eps < 0.0) throw PreconditionError("Fernique exponent must be nonnegative");
  FerniqueResult out;
  double max_a2 = 0.0;
  for (double a : s.scales) max_a2 = std::max(max_a2, a * a);
  out.threshold = 1.0 / (2.0 * s.t * max_a2);
  if (eps == 0.0) {
    // p_t is a probability measure.
    out.estimate = 1.0;
    out.stable = true;
    return out;
  }
  // Proposal q: same centre, variance doubled. Weight p/q per coordinate is
  // sqrt(2) exp(-(y-m)^2 / (4 sd^2)).
  GaussianSampler q = s.with_t(2.0 * s.t);
  const std::size_t d = s.dim();
  std::size_t chunks = (count + kChunkSize - 1) / kChunkSize;
  std::vector<Moments> partial(chunks);
  std::vector<double> chunk_max(chunks, 0.0), chunk_sum(chunks, 0.0);
  for_each_chunk(count, [&](std::size_t c, std::size_t first, std::size_t last) {
    std::vector<double> buf((last - first) * d);
    draw_chunk(q, c, last - first, buf.data());
    for (std::size_t r = 0; r < last - first; ++r) {
      double log_v = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        double y = buf[r * d + i];
        double z = y - s.mean(i);
        log_v += eps * y * y + 0.5 * std::log(2.0) - z * z / (4.0 * s.sd(i) * s.sd(i));
      }
      double v = std::exp(log_v);
      partial[c].push(v);
      chunk_max[c] = std::max(chunk_max[c], v);
      chunk_sum[c] += v;
    }
  });
  Moments total;
  double vmax = 0.0, vsum = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    total.merge(partial[c]);
    vmax = std::max(vmax, chunk_max[c]);
    vsum += chunk_sum[c];
  }
  Estimate e = total.estimate();
  out.estimate = e.mean;
  out.stderr_ = e.stderr_;
  out.max_share = vsum > 0.0 ? vmax / vsum : 1.0;
  out.stable = eps < out.threshold && out.max_share < kFerniqueMaxShare && e.rejected == 0 &&
               std::isfinite(out.estimate);
  return out;
}

bool ScalingSet::contains(std::span<const double> y) const {
  switch (kind) {
    case Kind::Whole: return true;
    case Kind::Ball: {
      double r2 = 0.0;
      for (double v : y) r2 += v * v;
      return r2 < radius * radius;
    }
    case Kind::Box:
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > lower[i] && y[i] < upper[i])) return false;
      }
      return true;
  }
  return false;
}

ScalingSet ScalingSet::scaled(double factor) const {
  ScalingSet out = *this;
  for (double& v : out.lower) v *= factor;
  for (double& v : out.upper) v *= factor;
  out.radius *= factor;
  return out;
}

std::string ScalingSet::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Whole: return "whole space";
    case Kind::Ball: os << "ball r=" << radius; return os.str();
    case Kind::Box:
      os << "box";
      for (std::size_t i = 0; i < lower.size(); ++i) os << " (" << lower[i] << "," << upper[i] << ")";
      return os.str();
  }
  return "";
}

ScalingResult scaling_check(const GaussianSampler& s, double scale, const ScalingSet& set,
                            std::size_t count) {
  if (!(scale > 0.0)) throw PreconditionError("scale must be positive");
  if (set.kind == ScalingSet::Kind::Box &&
      (set.lower.size() != s.dim() || set.upper.size() != s.dim())) {
    throw PreconditionError("box dimension does not match the sampler");
  }
  ScalingSet shrunk = set.scaled(1.0 / std::sqrt(scale));
  ScalingResult out;
  out.lhs = mc_expectation([&](std::span<const double> y) { return set.contains(y) ? 1.0 : 0.0; },
                           s.with_t(s.t * scale).with_stream(1), count);
  out.rhs = mc_expectation(
      [&](std::span<const double> y) { return shrunk.contains(y) ? 1.0 : 0.0; },
      s.with_stream(2), count);
  out.diff = out.lhs.mean - out.rhs.mean;
  out.combined_stderr = std::hypot(out.lhs.stderr_, out.rhs.stderr_);
  out.pass = out.combined_stderr > 0.0 ? std::fabs(out.diff) < 3.0 * out.combined_stderr
                                       : out.diff == 0.0;
  return out;
}

}  // namespace ckh
