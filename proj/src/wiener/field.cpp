#include "ckh/wiener/field.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ckh/error.hpp"
#include "ckh/wiener/detail/quadrature.hpp"
#include "ckh/wiener/poly_eval.hpp"

namespace ckh {

std::vector<double> VectorField::operator()(std::span<const double> y) const {
  std::vector<double> out(dim);
  value(y, out);
  return out;
}

std::vector<double> VectorField::jac(std::span<const double> y) const {
  std::vector<double> out(dim * dim);
  jacobian(y, out);
  return out;
}

double VectorField::div(std::span<const double> y) const {
  std::vector<double> J = jac(y);
  double s = 0.0;
  for (std::size_t i = 0; i < dim; ++i) s += J[i * dim + i];
  return s;
}

VectorField constant_field(std::vector<double> c) {
  VectorField F;
  F.dim = c.size();
  F.label = "constant";
  F.value = [c](std::span<const double>, std::span<double> out) {
    std::copy(c.begin(), c.end(), out.begin());
  };
  F.jacobian = [](std::span<const double>, std::span<double> J) {
    std::fill(J.begin(), J.end(), 0.0);
  };
  return F;
}

VectorField linear_field(std::vector<double> M, std::vector<double> c) {
  const std::size_t d = c.size();
  if (M.size() != d * d) throw PreconditionError("linear field matrix must be dim x dim");
  VectorField F;
  F.dim = d;
  F.label = "linear";
  F.value = [M, c, d](std::span<const double> y, std::span<double> out) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = c[i];
      for (std::size_t j = 0; j < d; ++j) s += M[i * d + j] * y[j];
      out[i] = s;
    }
  };
  F.jacobian = [M](std::span<const double>, std::span<double> J) {
    std::copy(M.begin(), M.end(), J.begin());
  };
  return F;
}

VectorField polynomial_field(const std::vector<MonomialSeries<double>>& components) {
  const std::size_t d = components.size();
  std::vector<PolyWithGradient> polys;
  for (const auto& c : components) {
    if (c.space().size() > d) {
      for (const auto& [alpha, coef] : c.terms()) {
        auto mv = alpha.max_variable();
        if (mv && *mv >= d) throw PreconditionError("field component uses a coordinate beyond dim");
      }
    }
    polys.emplace_back(c, d);
  }
  VectorField F;
  F.dim = d;
  F.label = "polynomial";
  F.value = [polys](std::span<const double> y, std::span<double> out) {
    for (std::size_t i = 0; i < polys.size(); ++i) out[i] = polys[i].value(y);
  };
  F.jacobian = [polys, d](std::span<const double> y, std::span<double> J) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) J[i * d + j] = polys[i].grad[j](y);
    }
  };
  return F;
}

VectorField HolmgrenField::field() const {
  const std::size_t nn = n();
  std::vector<MonomialSeries<double>> comps;
  comps.push_back(MonomialSeries<double>::variable(tx_space(nn), 0, 1.0 / A[0]));
  for (std::size_t i = 0; i < nn; ++i) {
    MonomialSeries<double> c(tx_space(nn));
    for (const auto& [alpha, v] : a_tilde[i].terms()) c.add_term(alpha, -v / A[i + 1]);
    comps.push_back(std::move(c));
  }
  VectorField F = polynomial_field(comps);
  F.label = "holmgren";
  return F;
}

HolmgrenField holmgren_field(const WeightScheme& w, std::vector<MonomialSeries<double>> a_tilde) {
  for (const auto& a : a_tilde) {
    if (a.involves(0)) throw PreconditionError("a~ must not depend on t'");
  }
  HolmgrenField out;
  out.A = w.A_vector(a_tilde.size());
  out.a_tilde = std::move(a_tilde);
  return out;
}

std::string to_string(Method m) { return m == Method::MonteCarlo ? "mc" : "quadrature"; }

namespace {

using detail::normal_pdf;

// Integrand of the volume side (without the Gaussian density).
double volume_integrand(const VectorField& F, const GaussianSampler& s,
                        std::span<const double> y, std::vector<double>& buf) {
  F.value(y, buf);
  double v = F.div(y);
  for (std::size_t i = 0; i < F.dim; ++i) {
    v -= buf[i] * (y[i] - s.mean(i)) / (s.t * s.scales[i] * s.scales[i]);
  }
  return v;
}

double gaussian_density(const GaussianSampler& s, std::span<const double> y) {
  double p = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i) p *= normal_pdf(y[i] - s.mean(i), s.sd(i));
  return p;
}

void check_dims(const VectorField& F, const GaussianSampler& s, std::size_t dim) {
  if (F.dim != dim || s.dim() != dim) {
    throw PreconditionError("field, domain and sampler dimensions differ");
  }
}

DivergenceResult box_quadrature(const VectorField& F, const Box& box, const GaussianSampler& s) {
  const std::size_t d = box.dim();
  DivergenceResult out;
  std::vector<double> buf(d);
  out.lhs = detail::integrate_box(
      [&](std::span<const double> y) {
        return volume_integrand(F, s, y, buf) * gaussian_density(s, y);
      },
      box.lower, box.upper);
  double rhs = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> lo, hi;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      lo.push_back(box.lower[j]);
      hi.push_back(box.upper[j]);
    }
    for (int side = 0; side < 2; ++side) {
      double v = side ? box.upper[i] : box.lower[i];
      if (!std::isfinite(v)) continue;
      double sign = side ? 1.0 : -1.0;
      std::vector<double> y(d), Fv(d);
      double face = detail::integrate_box(
          [&](std::span<const double> z) {
            for (std::size_t j = 0, k = 0; j < d; ++j) y[j] = j == i ? v : z[k++];
            F.value(y, Fv);
            return Fv[i] * gaussian_density(s, y);
          },
          lo, hi);
      rhs += sign * face;
    }
  }
  out.rhs = rhs;
  return out;
}

// Flux through the top l_lambda and the paraboloid k_lambda at base point x,
// divided by the base density p'(x).
double h_boundary_integrand(const VectorField& F, const GaussianSampler& s, double lambda,
                            std::span<const double> x, std::vector<double>& y,
                            std::vector<double>& Fv) {
  const std::size_t n = x.size();
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y[i + 1] = x[i];
    r2 += x[i] * x[i];
  }
  if (!(r2 < lambda)) return 0.0;
  // Top: outward normal +e_0.
  y[0] = lambda;
  F.value(y, Fv);
  double top = Fv[0] * normal_pdf(lambda - s.mean(0), s.sd(0));
  // Side: outward direction -grad(t' - |x|^2) = (-1, 2x).
  y[0] = r2;
  F.value(y, Fv);
  double flux = -Fv[0];
  for (std::size_t i = 0; i < n; ++i) flux += 2.0 * x[i] * Fv[i + 1];
  return top + flux * normal_pdf(r2 - s.mean(0), s.sd(0));
}

double base_density(const GaussianSampler& s, std::span<const double> x) {
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) p *= normal_pdf(x[i] - s.mean(i + 1), s.sd(i + 1));
  return p;
}

DivergenceResult h_quadrature(const VectorField& F, const Region& R, const GaussianSampler& s) {
  DivergenceResult out;
  std::vector<double> buf(F.dim), y(F.dim), Fv(F.dim);
  out.lhs = detail::integrate_H(
      [&](std::span<const double> yy) {
        return volume_integrand(F, s, yy, buf) * gaussian_density(s, yy);
      },
      R.n, R.lambda);
  out.rhs = detail::integrate_ball(
      [&](std::span<const double> x) {
        return h_boundary_integrand(F, s, R.lambda, x, y, Fv) * base_density(s, x);
      },
      R.n, std::sqrt(R.lambda));
  return out;
}

}  // namespace

DivergenceResult divergence_residual(const VectorField& F, const IntegrationDomain& domain,
                                     const GaussianSampler& s, Method method,
                                     std::size_t samples) {
  DivergenceResult out;
  if (const Box* box = std::get_if<Box>(&domain)) {
    if (box->upper.size() != box->dim()) throw PreconditionError("malformed box");
    check_dims(F, s, box->dim());
    if (method == Method::Quadrature) {
      out = box_quadrature(F, *box, s);
    } else {
      const std::size_t d = box->dim();
      // Faces: the Gaussian in direction i is replaced by its density at the
      // face value, the other coordinates stay sampled.
      auto diff = [&, d](std::span<const double> y, std::span<double> res) {
        thread_local std::vector<double> buf, z;
        buf.resize(d);
        z.assign(y.begin(), y.end());
        double lhs = box->contains(y) ? volume_integrand(F, s, y, buf) : 0.0;
        double rhs = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
          bool others = true;
          for (std::size_t j = 0; j < d; ++j) {
            if (j != i && !(y[j] > box->lower[j] && y[j] < box->upper[j])) others = false;
          }
          if (!others) continue;
          for (int side = 0; side < 2; ++side) {
            double v = side ? box->upper[i] : box->lower[i];
            if (!std::isfinite(v)) continue;
            z[i] = v;
            F.value(z, buf);
            rhs += (side ? 1.0 : -1.0) * buf[i] * normal_pdf(v - s.mean(i), s.sd(i));
          }
          z[i] = y[i];
        }
        res[0] = lhs;
        res[1] = rhs;
        res[2] = lhs - rhs;
      };
      auto est = mc_expectations(diff, 3, s, samples);
      out.lhs = est[0].mean;
      out.rhs = est[1].mean;
      out.error_bar = est[2].stderr_;
      out.samples = samples;
      out.rejected = est[2].rejected;
    }
  } else {
    const Region& R = std::get<Region>(domain);
    if (R.kind != Region::Kind::H) {
      throw PreconditionError("divergence check needs a box or the solid region H_lambda");
    }
    if (!(R.lambda > 0.0)) throw PreconditionError("lambda must be positive");
    check_dims(F, s, R.n + 1);
    if (method == Method::Quadrature) {
      if (R.n > 3) throw PreconditionError("quadrature supports n <= 3");
      out = h_quadrature(F, R, s);
    } else {
      const std::size_t d = R.n + 1;
      auto pair = [&, d](std::span<const double> y, std::span<double> res) {
        thread_local std::vector<double> buf, yy, Fv;
        buf.resize(d);
        yy.resize(d);
        Fv.resize(d);
        double lhs = R.contains(y) ? volume_integrand(F, s, y, buf) : 0.0;
        // The spatial coordinates of y are a draw from p'; the boundary
        // integrand is already divided by that density.
        double rhs = h_boundary_integrand(F, s, R.lambda, y.subspan(1), yy, Fv);
        res[0] = lhs;
        res[1] = rhs;
        res[2] = lhs - rhs;
      };
      auto est = mc_expectations(pair, 3, s, samples);
      out.lhs = est[0].mean;
      out.rhs = est[1].mean;
      out.error_bar = est[2].stderr_;
      out.samples = samples;
      out.rejected = est[2].rejected;
    }
  }
  out.method = method;
  out.residual = out.lhs - out.rhs;
  if (!std::isfinite(out.residual)) throw PreconditionError("non-finite divergence integrand");
  return out;
}

double trace_norm_DF(const VectorField& F, std::span<const double> A, std::span<const double> y) {
  const std::size_t d = F.dim;
  std::vector<double> J = F.jac(y);
  // Matrix of DF in the H-orthonormal basis A_j e_j.
  Eigen::MatrixXd M(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) M(i, j) = A[j] / A[i] * J[i * d + j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues().sum();
}

FBoundsReport check_F_bounds(const HolmgrenField& PF, const Region& region, std::size_t probe_count,
                             std::uint64_t seed) {
  if (region.n != PF.n()) throw PreconditionError("region and field dimensions differ");
  const std::size_t n = PF.n();
  const double lambda = region.lambda;
  VectorField F = PF.field();
  const auto& A = PF.A;
  FBoundsReport out;
  auto probe = [&](std::span<const double> y) {
    std::vector<double> Fv = F(y);
    double b = 0.0, h = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      b += Fv[i] * Fv[i] / std::pow(A[i], 4);
      h += Fv[i] * Fv[i] / (A[i] * A[i]);
    }
    out.bstar_sup = std::max(out.bstar_sup, b);
    out.H_sup = std::max(out.H_sup, h);
    ++out.probes;
    return b;
  };
  // Corners and axis points of the closure, then random points inside it.
  const double r = std::sqrt(lambda);
  std::vector<double> y(n + 1, 0.0);
  y[0] = lambda;
  probe(y);
  y[0] = 0.0;
  probe(y);
  for (std::size_t i = 1; i <= n; ++i) {
    for (double sgn : {-1.0, 1.0}) {
      std::fill(y.begin(), y.end(), 0.0);
      y[0] = lambda;
      y[i] = sgn * r;
      double b = probe(y);
      if (i == 1 && sgn > 0) out.corner_bstar = b;
    }
  }
  Xoshiro256 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  for (std::size_t k = 0; k < probe_count; ++k) {
    // Uniform direction, radius filling the ball, t' between r^2 and lambda.
    double norm = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      y[i] = normal(gen);
      norm += y[i] * y[i];
    }
    norm = std::sqrt(norm);
    double rad = r * std::pow(unit(gen), 1.0 / static_cast<double>(n));
    double r2 = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      y[i] *= rad / norm;
      r2 += y[i] * y[i];
    }
    y[0] = r2 + (lambda - r2) * unit(gen);
    probe(y);
  }
  GaussianSampler s(A, 1.0, seed);
  Estimate tn = mc_expectation([&](std::span<const double> yy) { return trace_norm_DF(F, A, yy); },
                               s, std::max<std::size_t>(probe_count, 1));
  out.trace_norm_integral = tn.mean;
  out.trace_norm_stderr = tn.stderr_;
  out.finite = std::isfinite(out.bstar_sup) && std::isfinite(out.H_sup) &&
               std::isfinite(out.trace_norm_integral) && tn.rejected == 0;
  return out;
}

}  // namespace ckh
