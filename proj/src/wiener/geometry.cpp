#include "ckh/wiener/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ckh/error.hpp"

namespace ckh {

namespace {

double spatial_r2(std::span<const double> y) {
  double r2 = 0.0;
  for (std::size_t i = 1; i < y.size(); ++i) r2 += y[i] * y[i];
  return r2;
}

}  // namespace

bool Region::contains(std::span<const double> y, double tol) const {
  if (y.size() != n + 1) throw PreconditionError("point dimension does not match the region");
  const double tp = y[0];
  const double r2 = spatial_r2(y);
  switch (kind) {
    case Kind::H: return r2 < tp && tp < lambda;
    case Kind::l: return std::fabs(tp - lambda) <= tol && r2 < lambda;
    case Kind::k: return tp < lambda && std::fabs(r2 - tp) <= tol;
    case Kind::I: return std::fabs(tp - lambda) <= tol && std::fabs(r2 - lambda) <= tol;
    case Kind::L: return std::fabs(tp - lambda) <= tol;
  }
  return false;
}

std::string to_string(Region::Kind k) {
  switch (k) {
    case Region::Kind::H: return "H";
    case Region::Kind::l: return "l";
    case Region::Kind::k: return "k";
    case Region::Kind::I: return "I";
    case Region::Kind::L: return "L";
  }
  return "?";
}

Region::Kind parse_region_kind(const std::string& s) {
  if (s == "H") return Region::Kind::H;
  if (s == "l") return Region::Kind::l;
  if (s == "k") return Region::Kind::k;
  if (s == "I") return Region::Kind::I;
  if (s == "L") return Region::Kind::L;
  throw ParseError("unknown region kind '" + s + "'");
}

std::string Region::describe() const {
  std::ostringstream os;
  os << to_string(kind) << "_lambda (n=" << n << ", lambda=" << lambda << ")";
  return os.str();
}

bool Box::contains(std::span<const double> y) const {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > lower[i] && y[i] < upper[i])) return false;
  }
  return true;
}

SurfaceChart SurfaceChart::flat(std::size_t n, double lambda, bool bounded) {
  return {Kind::Flat, n, lambda, bounded};
}

SurfaceChart SurfaceChart::paraboloid(std::size_t n, double lambda) {
  return {Kind::Paraboloid, n, lambda, true};
}

bool SurfaceChart::in_domain(std::span<const double> z) const {
  if (z.size() != n) return false;
  double r2 = 0.0;
  for (double v : z) {
    if (!std::isfinite(v)) return false;
    r2 += v * v;
  }
  return !bounded || r2 < lambda;
}

double SurfaceChart::g(std::span<const double> z) const {
  if (kind == Kind::Flat) return lambda;
  double r2 = 0.0;
  for (double v : z) r2 += v * v;
  return r2;
}

std::vector<double> SurfaceChart::lift(std::span<const double> z) const {
  if (!in_domain(z)) throw DomainError("base point outside the chart domain");
  std::vector<double> y(n + 1);
  y[0] = g(z);
  for (std::size_t i = 0; i < n; ++i) y[i + 1] = z[i];
  return y;
}

std::vector<double> SurfaceChart::grad_G(std::span<const double> z) const {
  std::vector<double> out(n + 1, 0.0);
  out[0] = 1.0;
  if (kind == Kind::Paraboloid) {
    for (std::size_t i = 0; i < n; ++i) out[i + 1] = -2.0 * z[i];
  }
  return out;
}

double h_inner(std::span<const double> u, std::span<const double> v, std::span<const double> A) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i] / (A[i] * A[i]);
  return s;
}

double h_norm(std::span<const double> u, std::span<const double> A) {
  return std::sqrt(h_inner(u, u, A));
}

std::vector<double> unit_normal(const SurfaceChart& c, std::span<const double> A,
                                std::span<const double> z) {
  if (!c.in_domain(z)) throw DomainError("base point outside the chart domain");
  // The H-gradient of G has B-components A_i^2 dG/dy_i.
  std::vector<double> h = c.grad_G(z);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] *= A[i] * A[i];
  double norm = h_norm(h, A);
  // H_lambda lies below the flat top and above the paraboloid.
  double sign = c.kind == SurfaceChart::Kind::Flat ? 1.0 : -1.0;
  for (double& v : h) v *= sign / norm;
  return h;
}

std::vector<double> project_N(std::span<const double> h, std::span<const double> A,
                              std::span<const double> v) {
  double c = h_inner(v, h, A);
  std::vector<double> out(h.begin(), h.end());
  for (double& x : out) x *= c;
  return out;
}

std::vector<double> chart_J(std::span<const double> h, std::span<const double> A,
                            std::span<const double> v) {
  std::vector<double> out = project_N(h, A, v);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i] - out[i];
  return out;
}

double surface_density(const SurfaceChart& c, std::span<const double> A, double t,
                       std::span<const double> x0, std::span<const double> z) {
  if (!(t > 0.0)) throw PreconditionError("variance t must be positive");
  if (A.size() != c.n + 1) throw PreconditionError("weights do not match the chart dimension");
  if (!c.in_domain(z)) throw DomainError("base point outside the chart domain");
  std::vector<double> dG = c.grad_G(z);
  double dg_h2 = 0.0;
  for (std::size_t i = 0; i < dG.size(); ++i) dg_h2 += A[i] * A[i] * dG[i] * dG[i];
  double shift = c.g(z) - (x0.empty() ? 0.0 : x0[0]);
  return std::sqrt(dg_h2) / A[0] / std::sqrt(2.0 * std::numbers::pi * t) *
         std::exp(-shift * shift / (2.0 * t * A[0] * A[0]));
}

}  // namespace ckh
