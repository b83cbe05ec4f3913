#include "ssq/painleve.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "ssq/errors.hpp"
#include "ssq/special.hpp"

namespace ssq {
namespace {

constexpr double kAiryScale = 0.6933612743506347048;  // 3^{-1/3}

// Fourth-order second-derivative rows: central five-point in the interior,
// one-sided six-point at the two left edge nodes. The right edge rows are
// replaced by Dirichlet pins onto the linearized tail.
struct Stencil {
  int offset;               // first column relative to the node
  std::array<double, 6> w;  // weights / h^2 (last may be unused)
  int len;
};

Stencil d2_row(std::size_t i, std::size_t n) {
  if (i == 0) return {0, {45.0 / 12, -154.0 / 12, 214.0 / 12, -156.0 / 12, 61.0 / 12, -10.0 / 12}, 6};
  if (i == 1) return {-1, {10.0 / 12, -15.0 / 12, -4.0 / 12, 14.0 / 12, -6.0 / 12, 1.0 / 12}, 6};
  (void)n;
  return {-2, {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12, 0.0}, 5};
}

struct Discrete {
  std::vector<double> ys;
  double h;
  std::size_t n;
  double kappa_mag;

  double bc(std::size_t i) const {
    return kappa_mag * airy_ai(kAiryScale * ys[i]);
  }

  // F_i = 3 u''_i - y_i u_i + 24 u_i^3 at ODE rows; pin rows at the top end.
  void residual(const std::vector<double>& u, std::vector<double>& f) const {
    f.assign(n, 0.0);
    for (std::size_t i = 0; i + 4 < n; ++i) {
      const Stencil s = d2_row(i, n);
      double d2 = 0.0;
      for (int j = 0; j < s.len; ++j)
        d2 += s.w[static_cast<std::size_t>(j)] *
              u[i + static_cast<std::size_t>(s.offset + j)];
      d2 /= h * h;
      f[i] = 3.0 * d2 - ys[i] * u[i] + 24.0 * u[i] * u[i] * u[i];
    }
    for (std::size_t i = n - 4; i < n; ++i) f[i] = u[i] - bc(i);
  }

  Eigen::SparseMatrix<double> jacobian(const std::vector<double>& u) const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(7 * n);
    for (std::size_t i = 0; i + 4 < n; ++i) {
      const Stencil s = d2_row(i, n);
      for (int j = 0; j < s.len; ++j)
        trip.emplace_back(static_cast<int>(i),
                          static_cast<int>(i) + s.offset + j,
                          3.0 * s.w[static_cast<std::size_t>(j)] / (h * h));
      trip.emplace_back(static_cast<int>(i), static_cast<int>(i),
                        -ys[i] + 72.0 * u[i] * u[i]);
    }
    for (std::size_t i = n - 4; i < n; ++i)
      trip.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
    Eigen::SparseMatrix<double> jac(static_cast<int>(n), static_cast<int>(n));
    jac.setFromTriplets(trip.begin(), trip.end());
    return jac;
  }
};

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> newton_solve(const Discrete& d,
                                 std::vector<double> u,
                                 const PainleveOptions& opts) {
  std::vector<double> f;
  d.residual(u, f);
  double fn = max_abs(f);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  for (int it = 0; it < opts.max_newton_iters; ++it) {
    if (fn < opts.tol) return u;
    lu.compute(d.jacobian(u));
    if (lu.info() != Eigen::Success)
      throw NoConvergence("singular Jacobian in Painleve solve");
    Eigen::Map<const Eigen::VectorXd> fv(f.data(), static_cast<long>(d.n));
    Eigen::VectorXd step = lu.solve(-fv);
    double lambda = 1.0;
    std::vector<double> trial(d.n), ftrial;
    for (int halve = 0; halve < 12; ++halve) {
      for (std::size_t i = 0; i < d.n; ++i)
        trial[i] = u[i] + lambda * step(static_cast<long>(i));
      d.residual(trial, ftrial);
      const double ft = max_abs(ftrial);
      if (std::isfinite(ft) && ft < fn) {
        u = trial;
        f = ftrial;
        fn = ft;
        break;
      }
      lambda *= 0.5;
      if (halve == 11)
        throw BlowUp("damped Newton stalled at residual " +
                     std::to_string(fn));
    }
    if (max_abs(u) > opts.blowup_norm)
      throw BlowUp("solution norm exceeded " +
                   std::to_string(opts.blowup_norm));
  }
  throw NoConvergence("Painleve Newton did not converge");
}

}  // namespace

cplx PainleveSolution::up_at(double y) const {
  const std::size_t n = ys.size();
  if (n < 4 || y < ys.front() || y > ys.back()) return cplx(0, 0);
  const double h = ys[1] - ys[0];
  long i0 = static_cast<long>(std::floor((y - ys.front()) / h)) - 1;
  i0 = std::clamp<long>(i0, 0, static_cast<long>(n) - 4);
  const double t = (y - ys[static_cast<std::size_t>(i0)]) / h;
  const double t1 = t - 1.0, t2 = t - 2.0, t3 = t - 3.0;
  const double w0 = -t1 * t2 * t3 / 6.0;
  const double w1 = t * t2 * t3 / 2.0;
  const double w2 = -t * t1 * t3 / 2.0;
  const double w3 = t * t1 * t2 / 6.0;
  const auto* v = up.data() + i0;
  return w0 * v[0] + w1 * v[1] + w2 * v[2] + w3 * v[3];
}

double airy_reference(double y) { return airy_ai(y); }

PainleveSolution solve_painleve(cplx kappa, double y_min, double y_max,
                                std::size_t n, const PainleveOptions& opts) {
  if (n < 16) throw Error("painleve grid too small");
  const double mag = std::abs(kappa);
  if (mag * airy_ai(kAiryScale * y_max) > 1e-10)
    throw Error("y_max too small for the requested kappa tail");

  Discrete d;
  d.n = n;
  d.h = (y_max - y_min) / static_cast<double>(n - 1);
  d.ys.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    d.ys[i] = y_min + d.h * static_cast<double>(i);
  d.kappa_mag = mag;

  PainleveSolution ps;
  ps.ys = d.ys;
  ps.kappa = kappa;
  ps.up.assign(n, cplx(0, 0));
  if (mag == 0.0) return ps;

  // Newton from the linearized tail; continuation in kappa when the direct
  // solve stalls near the blow-up threshold.
  std::vector<double> u(n);
  const auto guess_from = [&](double m, const std::vector<double>* prev) {
    for (std::size_t i = 0; i < n; ++i)
      u[i] = prev ? (*prev)[i] * (m / d.kappa_mag)
                  : m * airy_ai(kAiryScale * d.ys[i]);
  };
  guess_from(mag, nullptr);
  d.kappa_mag = mag;
  try {
    u = newton_solve(d, u, opts);
  } catch (const Error&) {
    std::vector<double> prev;
    double reached = 0.0;
    const int stages = 8;
    for (int s = 1; s <= stages; ++s) {
      const double m = mag * static_cast<double>(s) / stages;
      if (!prev.empty()) {
        for (std::size_t i = 0; i < n; ++i) u[i] = prev[i] * (m / reached);
      } else {
        for (std::size_t i = 0; i < n; ++i)
          u[i] = m * airy_ai(kAiryScale * d.ys[i]);
      }
      d.kappa_mag = m;
      u = newton_solve(d, u, opts);  // BlowUp propagates
      prev = u;
      reached = m;
    }
  }

  // record the ODE residual through the same discrete operator
  std::vector<double> f;
  d.kappa_mag = mag;
  d.residual(u, f);
  double rmax = 0.0;
  for (std::size_t i = 0; i + 4 < n; ++i) rmax = std::max(rmax, std::abs(f[i]));
  ps.residual_max = rmax;

  const cplx phase = kappa / mag;
  for (std::size_t i = 0; i < n; ++i) ps.up[i] = phase * u[i];
  return ps;
}

KappaFit match_kappa_from_pde(
    const std::vector<std::pair<double, ComplexField>>& runs, double y_fit_lo,
    double y_fit_hi) {
  if (runs.size() < 3)
    throw Error("kappa fit needs at least three evolution snapshots");
  KappaFit fit;
  const int m = 60;
  cplx acc(0, 0);
  for (const auto& [t, field] : runs) {
    if (t <= 0) throw NonpositiveTime("kappa fit requires t > 0");
    const double t13 = std::cbrt(t);
    cplx num(0, 0);
    double den = 0.0, sig = 0.0;
    std::vector<cplx> w(m);
    std::vector<double> a(m);
    for (int i = 0; i < m; ++i) {
      const double y =
          y_fit_lo + (y_fit_hi - y_fit_lo) * (i + 0.5) / m;
      a[static_cast<std::size_t>(i)] = airy_ai(kAiryScale * y);
      w[static_cast<std::size_t>(i)] = t13 * field.at(y * t13);
      num += w[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
      den += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
      sig += std::norm(w[static_cast<std::size_t>(i)]);
    }
    const cplx kap = num / den;
    double res2 = 0.0;
    for (int i = 0; i < m; ++i)
      res2 += std::norm(w[static_cast<std::size_t>(i)] -
                        kap * a[static_cast<std::size_t>(i)]);
    const double rel = sig > 0 ? std::sqrt(res2 / sig) : 1.0;
    if (rel > 0.10)
      throw FitDegenerate("fit residual " + std::to_string(rel) +
                          " of signal at t = " + std::to_string(t));
    fit.per_run.push_back(kap);
    fit.residuals.push_back(rel);
    acc += kap;
  }
  fit.kappa = acc / static_cast<double>(runs.size());
  return fit;
}

}  // namespace ssq
