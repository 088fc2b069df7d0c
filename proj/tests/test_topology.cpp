#include <doctest.h>

#include <cmath>

#include "ckh/error.hpp"
#include "ckh/topology/metric.hpp"

using namespace ckh;

namespace {
PointOracle pt(std::vector<double> v) { return PointOracle::finite(v); }
}  // namespace

TEST_CASE("distance examples") {
  auto zero = pt({0.0});
  CHECK(dist(pt({1, 1}), zero, MetricSpec::sup(), 10).upper == 1.0);
  auto d2 = dist(pt({0.3, 0.4}), zero, MetricSpec(2), 10);
  CHECK(d2.lower == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d2.exact());
  CHECK(dist(pt({0.25}), zero, MetricSpec(0.5), 10).upper == doctest::Approx(0.5));
  CHECK(dist(pt({3.0, 4.0}), zero, MetricSpec(2), 10).upper == 1.0);
}

TEST_CASE("ball membership uses the raw norm with strict inequality") {
  auto zero = pt({0.0});
  auto c = pt({0.3, 0.4});
  CHECK(ball_contains(zero, c, 0.6, MetricSpec(2), 10) == Tri::True);
  CHECK(ball_contains(zero, pt({0.5}), 0.5, MetricSpec(2), 10) == Tri::False);
  CHECK(ball_contains(zero, pt({0.9, -0.2}), 1.0, MetricSpec::sup(), 10) == Tri::True);
  CHECK(ball_contains(zero, pt({3.0, 4.0}), 5.5, MetricSpec(2), 10) == Tri::True);
}

TEST_CASE("oracle tails give intervals and three-valued membership") {
  auto zero = pt({0.0});
  auto geo = PointOracle::from_rule(SequenceRule::geometric(1.0, 0.5), 1.0);
  // ||(2^-i)||_1 = 1 exactly; the bracket must contain it.
  auto n1 = norm_difference(geo, zero, MetricSpec(1), 20);
  CHECK(n1.lower <= 1.0);
  CHECK(n1.upper >= 1.0 - 1e-15);
  CHECK(n1.upper - n1.lower < 1e-5);
  CHECK(ball_contains(zero, geo, 1.5, MetricSpec(1), 20) == Tri::True);
  CHECK(ball_contains(zero, geo, 0.9, MetricSpec(1), 20) == Tri::False);
  CHECK(ball_contains(zero, geo, 1.0, MetricSpec(1), 20) == Tri::Unknown);
  auto harmonic = PointOracle::from_rule(SequenceRule::power(1.0, -1.0), 1.0);
  CHECK_THROWS_AS(norm_difference(harmonic, zero, MetricSpec(1), 50), TailError);
  CHECK_NOTHROW(norm_difference(harmonic, zero, MetricSpec(2), 50));
  CHECK(norm_difference(harmonic, zero, MetricSpec::sup(), 50).lower == 1.0);
}

TEST_CASE("property suite") {
  for (const auto& r : run_topology_properties(2000, 17)) {
    INFO(r.name);
    CHECK(r.failures == 0);
    CHECK(r.trials == 2000);
  }
}
