#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ckh {

// Points are (t', x1..xn) in B-coordinates.
struct Region {
  enum class Kind { H, l, k, I, L };
  std::size_t n = 1;
  double lambda = 0.0;
  Kind kind = Kind::H;

  // Surfaces are matched to within tol.
  bool contains(std::span<const double> y, double tol = 1e-12) const;
  std::string describe() const;
};

Region::Kind parse_region_kind(const std::string& s);
std::string to_string(Region::Kind k);

// Axis-aligned box; infinite bounds allowed.
struct Box {
  std::vector<double> lower, upper;
  std::size_t dim() const { return lower.size(); }
  bool contains(std::span<const double> y) const;
};

// A surface given as a graph t' = g(x) over the base coordinates x1..xn:
// the flat slice t' = lambda (l_lambda, or all of L_lambda when unbounded) or
// the paraboloid t' = sum x_i^2 (k_lambda). Bounded charts use the open ball
// sum x_i^2 < lambda as their domain.
struct SurfaceChart {
  enum class Kind { Flat, Paraboloid };
  Kind kind = Kind::Flat;
  std::size_t n = 1;
  double lambda = 0.0;
  bool bounded = true;

  static SurfaceChart flat(std::size_t n, double lambda, bool bounded = true);
  static SurfaceChart paraboloid(std::size_t n, double lambda);

  bool in_domain(std::span<const double> z) const;
  double g(std::span<const double> z) const;
  // Point of B over base point z (throws DomainError outside the domain).
  std::vector<double> lift(std::span<const double> z) const;
  // Euclidean gradient of G(y) = t' - g(x) (points into increasing t').
  std::vector<double> grad_G(std::span<const double> z) const;
};

// Weighted pairing <u, v>_H = sum u_i v_i / A_i^2 on B-coordinate components.
double h_inner(std::span<const double> u, std::span<const double> v, std::span<const double> A);
double h_norm(std::span<const double> u, std::span<const double> A);

// Unit normal h of the chart at base point z (|h|_H = 1), oriented out of H_lambda.
std::vector<double> unit_normal(const SurfaceChart& c, std::span<const double> A,
                                std::span<const double> z);
// N v = <v, h>_H h and J v = v - N v.
std::vector<double> project_N(std::span<const double> h, std::span<const double> A,
                              std::span<const double> v);
std::vector<double> chart_J(std::span<const double> h, std::span<const double> A,
                            std::span<const double> v);

// Density of the normal surface measure sigma_t(x0, .) on the chart with
// respect to the base Gaussian p'_t(x0', .) at z:
//   (1/sqrt(2 pi t)) (|DG|_H / A_0) exp(-(g(z) - x0_0)^2 / (2 t A_0^2)),
// where |DG|_H / A_0 = 1 / |N h_0| for the vertical direction h_0 = A_0 e_0.
// x0 may be empty (the origin).
double surface_density(const SurfaceChart& c, std::span<const double> A, double t,
                       std::span<const double> x0, std::span<const double> z);

}  // namespace ckh
