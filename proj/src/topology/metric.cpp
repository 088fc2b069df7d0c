#include "ckh/topology/metric.hpp"

#include <algorithm>
#include <cmath>

#include "ckh/error.hpp"

namespace ckh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper bound for the tail of |x_i| beyond k, in the form matching the norm.
double tail_p_sum(const PointOracle& x, double p, std::size_t k) {
  auto b = x.tail.abs_pow(p).tail_bracket(k);
  return b.upper;
}

}  // namespace

MetricSpec::MetricSpec(double p_) : p(p_) {
  if (!(p > 0.0)) throw PreconditionError("metric exponent p must be positive");
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

Interval norm_difference(const PointOracle& x, const PointOracle& y, const MetricSpec& spec,
                         std::size_t tail_index) {
  if (x.first != y.first) throw SpaceError("points index their coordinates differently");
  std::size_t last = std::max({tail_index, x.explicit_end(), y.explicit_end()});
  double head = 0.0;
  for (std::size_t i = x.first; i <= last; ++i) {
    double d = std::fabs(x.value(static_cast<VarIndex>(i)) - y.value(static_cast<VarIndex>(i)));
    if (spec.is_sup()) {
      head = std::max(head, d);
    } else {
      head += std::pow(d, spec.p);
    }
  }
  Interval out;
  if (spec.is_sup()) {
    double tail = x.tail.sup_tail(last) + y.tail.sup_tail(last);
    if (!std::isfinite(tail)) throw TailError("sup tail has no finite bound");
    out.lower = head;
    out.upper = std::max(head, tail);
    return out;
  }
  double tx = tail_p_sum(x, spec.p, last);
  double ty = tail_p_sum(y, spec.p, last);
  if (!std::isfinite(tx) || !std::isfinite(ty)) {
    throw TailError("tail of sum |x_i|^p has no finite bound for p = " + std::to_string(spec.p));
  }
  if (spec.p >= 1.0) {
    out.lower = std::pow(head, 1.0 / spec.p);
    out.upper = out.lower + std::pow(tx, 1.0 / spec.p) + std::pow(ty, 1.0 / spec.p);
  } else {
    out.lower = head;
    out.upper = head + tx + ty;
  }
  return out;
}

Interval dist(const PointOracle& x, const PointOracle& y, const MetricSpec& spec,
              std::size_t tail_index) {
  Interval n = norm_difference(x, y, spec, tail_index);
  return {std::min(1.0, n.lower), std::min(1.0, n.upper)};
}

Tri ball_contains(const PointOracle& center, const PointOracle& candidate, double r,
                  const MetricSpec& spec, std::size_t tail_index) {
  if (!(r > 0.0)) throw PreconditionError("ball radius must be positive");
  Interval n = norm_difference(center, candidate, spec, tail_index);
  if (n.upper < r) return Tri::True;
  if (n.lower >= r) return Tri::False;
  return Tri::Unknown;
}

double norm(const std::vector<double>& x, const MetricSpec& spec) {
  double acc = 0.0;
  for (double v : x) {
    if (spec.is_sup()) {
      acc = std::max(acc, std::fabs(v));
    } else {
      acc += std::pow(std::fabs(v), spec.p);
    }
  }
  if (!spec.is_sup() && spec.p >= 1.0) acc = std::pow(acc, 1.0 / spec.p);
  return acc;
}

double dist(const std::vector<double>& x, const std::vector<double>& y, const MetricSpec& spec) {
  std::vector<double> d(std::max(x.size(), y.size()), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = (i < x.size() ? x[i] : 0.0) - (i < y.size() ? y[i] : 0.0);
  }
  return std::min(1.0, norm(d, spec));
}

std::vector<PropertyResult> run_topology_properties(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> small(-1.0, 1.0);
  std::uniform_real_distribution<double> exponent(0.05, 6.0);
  std::bernoulli_distribution sparse(0.4);
  auto vec = [&](auto& dist_) {
    std::vector<double> v(len(rng), 0.0);
    for (double& c : v) c = sparse(rng) ? 0.0 : dist_(rng);
    return v;
  };
  const double tol = 1e-12;
  PropertyResult mono{"norm monotone in p (1 <= p <= q <= inf)", trials, 0};
  PropertyResult sub_one{"p-sum comparison for p < q < 1 inside the unit p-ball", trials, 0};
  PropertyResult symmetry{"symmetry", trials, 0};
  PropertyResult identity{"identity of indiscernibles", trials, 0};
  PropertyResult triangle{"triangle inequality", trials, 0};
  for (std::size_t k = 0; k < trials; ++k) {
    auto x = vec(coord);
    double p = 1.0 + exponent(rng);
    double q = p + exponent(rng);
    bool q_inf = (k % 5 == 0);
    MetricSpec sp(p), sq = q_inf ? MetricSpec::sup() : MetricSpec(q);
    if (norm(x, sq) > norm(x, sp) * (1 + tol) + tol) ++mono.failures;

    double a = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    double b = std::uniform_real_distribution<double>(a, 0.999)(rng);
    auto z = vec(small);
    double za = norm(z, MetricSpec(a));
    if (za > 1.0) {
      for (double& c : z) c /= std::pow(za, 1.0 / a) * 1.0001;
    }
    if (norm(z, MetricSpec(b)) > norm(z, MetricSpec(a)) * (1 + tol) + tol) ++sub_one.failures;

    auto y = vec(coord);
    auto w = vec(coord);
    double r = (k % 3 == 0) ? std::uniform_real_distribution<double>(0.1, 0.99)(rng) : p;
    MetricSpec m(r);
    if (std::fabs(dist(x, y, m) - dist(y, x, m)) > tol) ++symmetry.failures;
    if (dist(x, x, m) != 0.0 || (dist(x, y, m) == 0.0 && norm(x, m) != norm(y, m))) {
      ++identity.failures;
    }
    if (dist(x, w, m) > dist(x, y, m) + dist(y, w, m) + tol) ++triangle.failures;
  }
  return {mono, sub_one, symmetry, identity, triangle};
}

}  // namespace ckh
