#include "ckh/series/point_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ckh/error.hpp"

namespace ckh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double SequenceRule::value(std::size_t i) const {
  if (c == 0.0) return 0.0;
  double di = static_cast<double>(i);
  return c * std::pow(q, di) * std::pow(di, s);
}

SequenceRule SequenceRule::abs_pow(double p) const {
  return {std::pow(std::fabs(c), p), std::pow(std::fabs(q), p), s * p};
}

SequenceRule SequenceRule::reciprocal_pow(double p) const {
  if (c == 0.0 || q == 0.0) {
    throw PreconditionError("reciprocal of a rule with zero values");
  }
  return {std::pow(std::fabs(c), -p), std::pow(std::fabs(q), -p), -s * p};
}

bool SequenceRule::Bracket::finite() const { return std::isfinite(upper); }

SequenceRule::Bracket SequenceRule::tail_bracket(std::size_t k) const {
  const double a = std::fabs(c);
  const double r = std::fabs(q);
  if (a == 0.0 || r == 0.0) return {0.0, 0.0};
  if (r > 1.0) return {kInf, kInf};
  const double k1 = static_cast<double>(k) + 1.0;
  if (r == 1.0) {
    if (s >= -1.0) return {kInf, kInf};
    // Decreasing i^s: integral comparison on [k+1, inf).
    double integral = std::pow(k1, s + 1.0) / (-s - 1.0);
    return {a * integral, a * (std::pow(k1, s) + integral)};
  }
  auto term = [&](double i) { return a * std::pow(r, i) * std::pow(i, s); };
  const double first = term(k1);
  if (s == 0.0) return {first / (1.0 - r), first / (1.0 - r)};
  if (s < 0.0) {
    // Ratios r((i+1)/i)^s increase towards r.
    double rho_low = r * std::pow((k1 + 1.0) / k1, s);
    return {first / (1.0 - rho_low), first / (1.0 - r)};
  }
  // s > 0: ratios decrease towards r from above. Sum explicitly until the
  // ratio is below (1+r)/2, then bound geometrically.
  const double target = 0.5 * (1.0 + r);
  double partial = 0.0;
  double i = k1;
  while (r * std::pow((i + 1.0) / i, s) > target) {
    partial += term(i);
    i += 1.0;
  }
  double head = term(i);
  double rho = r * std::pow((i + 1.0) / i, s);
  return {partial + head / (1.0 - r), partial + head / (1.0 - rho)};
}

double SequenceRule::sup_tail(std::size_t k) const {
  const double a = std::fabs(c);
  const double r = std::fabs(q);
  if (a == 0.0 || r == 0.0) return 0.0;
  if (r > 1.0) return kInf;
  const double k1 = static_cast<double>(k) + 1.0;
  if (r == 1.0) return s > 0.0 ? kInf : a * std::pow(k1, s);
  if (s <= 0.0) return a * std::pow(r, k1) * std::pow(k1, s);
  double peak = s / std::log(1.0 / r);
  double at = std::max(peak, k1);
  return a * std::pow(r, at) * std::pow(at, s);
}

std::string SequenceRule::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << c << "*" << q << "^i*i^" << s;
  return os.str();
}

PointOracle PointOracle::finite(std::span<const double> values, VarIndex first) {
  PointOracle x;
  x.first = first;
  for (std::size_t i = 0; i < values.size(); ++i) {
    x.explicit_values[first + static_cast<VarIndex>(i)] = values[i];
  }
  return x;
}

PointOracle PointOracle::from_rule(const SequenceRule& rule, double tail_p, VarIndex first) {
  PointOracle x;
  x.tail = rule;
  x.tail_p = tail_p;
  x.first = first;
  return x;
}

double PointOracle::value(VarIndex i) const {
  if (i < first) {
    throw PreconditionError("point has no coordinate " + std::to_string(i) +
                            " (coordinates start at " + std::to_string(first) + ")");
  }
  if (auto it = explicit_values.find(i); it != explicit_values.end()) return it->second;
  return tail.value(i);
}

std::size_t PointOracle::explicit_end() const {
  if (explicit_values.empty()) return first;
  return std::max<std::size_t>(first, explicit_values.rbegin()->first + 1);
}

WitnessCheck check_witness(const PointOracle& x, std::size_t check_index) {
  WitnessCheck out;
  std::size_t last = std::max(check_index, x.explicit_end());
  double sum = 0.0;
  double prev = 0.0;
  std::size_t next_sample = 1;
  for (std::size_t i = x.first, count = 1; i <= last; ++i, ++count) {
    double v = std::fabs(x.value(static_cast<VarIndex>(i)));
    double term = v == 0.0 ? kInf : std::pow(v, -x.tail_p);
    sum += term;
    if (!(sum >= prev)) out.monotone = false;
    prev = sum;
    if (count == next_sample || i == last) {
      out.partial_sums.push_back(sum);
      next_sample *= 2;
    }
  }
  out.checked_sum = sum;
  if (x.tail.c == 0.0 || x.tail.q == 0.0) {
    out.tail_upper = kInf;
  } else {
    out.tail_upper = x.tail.reciprocal_pow(x.tail_p).tail_bracket(last).upper;
  }
  out.bound = x.declared_bound.value_or(sum + out.tail_upper);
  out.ok = out.monotone && std::isfinite(sum) && std::isfinite(out.tail_upper) &&
           std::isfinite(out.bound) && sum <= out.bound;
  return out;
}

}  // namespace ckh
