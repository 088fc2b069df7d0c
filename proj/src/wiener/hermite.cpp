#include "ckh/wiener/hermite.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "ckh/error.hpp"

namespace ckh {

double hermite_normalized(unsigned k, double z) {
  // He_{k+1} = z He_k - k He_{k-1}; normalized form carries 1/sqrt(k!).
  double prev = 0.0, cur = 1.0;
  for (unsigned j = 0; j < k; ++j) {
    double next = (z * cur - std::sqrt(static_cast<double>(j)) * prev) /
                  std::sqrt(static_cast<double>(j + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

std::vector<MultiIndex> basis_for(std::size_t dim, unsigned degree) {
  // enumerate_multiindices works on variables 1..dim; shift to 0..dim-1.
  std::vector<MultiIndex> out;
  for (const auto& alpha : enumerate_multiindices(dim, degree)) {
    std::vector<MultiIndex::Entry> e;
    for (auto [v, k] : alpha.entries()) e.emplace_back(v - 1, k);
    out.emplace_back(std::move(e));
  }
  return out;
}

struct Design {
  const GaussianSampler& s;
  std::vector<MultiIndex> basis;
  unsigned degree;

  void row(std::span<const double> y, Eigen::VectorXd& phi) const {
    const std::size_t d = s.dim();
    thread_local std::vector<double> table;
    table.assign(d * (degree + 1), 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      double z = (y[i] - s.mean(i)) / s.sd(i);
      for (unsigned k = 0; k <= degree; ++k) table[i * (degree + 1) + k] = hermite_normalized(k, z);
    }
    phi.resize(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      double v = 1.0;
      for (auto [var, k] : basis[b].entries()) v *= table[var * (degree + 1) + k];
      phi[static_cast<Eigen::Index>(b)] = v;
    }
  }
};

struct Fit {
  Design design;
  Eigen::VectorXd coef;
  double train_ms = 0.0;
};

Fit fit(const PointFn& f, unsigned degree, const GaussianSampler& s,
        std::span<const double> ys, std::size_t train) {
  Fit out{Design{s, basis_for(s.dim(), degree), degree}, {}, 0.0};
  const auto m = static_cast<Eigen::Index>(out.design.basis.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd phi;
  std::vector<double> fv(train);
  for (std::size_t r = 0; r < train; ++r) {
    auto y = ys.subspan(r * s.dim(), s.dim());
    out.design.row(y, phi);
    fv[r] = f(y);
    G.selfadjointView<Eigen::Lower>().rankUpdate(phi);
    rhs += fv[r] * phi;
  }
  G = G.selfadjointView<Eigen::Lower>();
  out.coef = G.ldlt().solve(rhs);
  double ms = 0.0;
  for (std::size_t r = 0; r < train; ++r) {
    out.design.row(ys.subspan(r * s.dim(), s.dim()), phi);
    double e = fv[r] - phi.dot(out.coef);
    ms += e * e;
  }
  out.train_ms = ms / static_cast<double>(train);
  return out;
}

double squared_error(const Fit& ft, const PointFn& f, std::span<const double> y) {
  thread_local Eigen::VectorXd phi;
  ft.design.row(y, phi);
  double e = f(y) - phi.dot(ft.coef);
  return e * e;
}

HermiteResult to_result(const Fit& ft, double mean_sq, double se_sq, std::size_t count) {
  HermiteResult r;
  r.degree = ft.design.degree;
  r.basis = ft.design.basis;
  r.coefficients.assign(ft.coef.data(), ft.coef.data() + ft.coef.size());
  r.residual = std::sqrt(std::max(mean_sq, 0.0));
  r.residual_stderr = se_sq;
  r.train_residual = std::sqrt(ft.train_ms);
  r.count = count;
  return r;
}

void check_count(std::size_t count) {
  if (count < 4) throw PreconditionError("hermite projection needs at least 4 samples");
}

// Mean and stderr over holdout rows.
std::pair<double, double> mean_se(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  double n = static_cast<double>(v.size());
  return {m, n > 1 ? std::sqrt(s2 / (n - 1) / n) : 0.0};
}

}  // namespace

HermiteResult hermite_projection(const PointFn& f, unsigned degree, const GaussianSampler& s,
                                 std::size_t count) {
  check_count(count);
  std::vector<double> ys = sample(s, count);
  const std::size_t train = count / 2;
  Fit ft = fit(f, degree, s, ys, train);
  std::vector<double> sq;
  for (std::size_t r = train; r < count; ++r) {
    sq.push_back(squared_error(ft, f, std::span<const double>(ys).subspan(r * s.dim(), s.dim())));
  }
  auto [m, se] = mean_se(sq);
  return to_result(ft, m, se, count);
}

HermiteComparison hermite_compare(const PointFn& f, unsigned low, unsigned high,
                                  const GaussianSampler& s, std::size_t count) {
  check_count(count);
  std::vector<double> ys = sample(s, count);
  const std::size_t train = count / 2;
  Fit lo = fit(f, low, s, ys, train);
  Fit hi = fit(f, high, s, ys, train);
  std::vector<double> sl, sh, diff;
  for (std::size_t r = train; r < count; ++r) {
    auto y = std::span<const double>(ys).subspan(r * s.dim(), s.dim());
    sl.push_back(squared_error(lo, f, y));
    sh.push_back(squared_error(hi, f, y));
    diff.push_back(sh.back() - sl.back());
  }
  HermiteComparison out;
  auto [ml, sel] = mean_se(sl);
  auto [mh, seh] = mean_se(sh);
  out.low = to_result(lo, ml, sel, count);
  out.high = to_result(hi, mh, seh, count);
  std::tie(out.mean_diff, out.stderr_diff) = mean_se(diff);
  out.strictly_decreasing = out.mean_diff + 3.0 * out.stderr_diff < 0.0;
  return out;
}

}  // namespace ckh
