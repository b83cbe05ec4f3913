#include "ssq/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "ssq/errors.hpp"

namespace ssq {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                 e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

struct JostRhs {
  const Potential& u;
  cplx two_ik;

  Mat3 operator()(double x, const Mat3& w) const {
    const cplx uv = u(x);
    const cplx ph = std::exp(two_ik * x);
    const cplx up = uv * ph;                 // u e^{2ikx}
    const cplx uc = std::conj(uv) * ph;      // u* e^{2ikx}
    const cplx dm = 1.0 / ph;
    Mat3 d;
    d.row(0) = up * w.row(2);
    d.row(1) = uc * w.row(2);
    d.row(2) = -(std::conj(uv) * dm) * w.row(0) - (uv * dm) * w.row(1);
    return d;
  }
};

Mat3 integrate_rk45(const JostRhs& rhs, double x0, double x1,
                    const JostOptions& opts) {
  Mat3 w = Mat3::Identity();
  const double dir = (x1 >= x0) ? 1.0 : -1.0;
  double x = x0;
  double h = dir * std::min(0.1, std::abs(x1 - x0) / 16.0);
  long steps = 0;
  Mat3 k1 = rhs(x, w);
  while (dir * (x1 - x) > 0) {
    if (++steps > opts.max_steps)
      throw StepFailure("jost integrator exceeded max step count");
    if (dir * (x + h - x1) > 0) h = x1 - x;
    const Mat3 k2 = rhs(x + c2 * h, w + h * (a21 * k1));
    const Mat3 k3 = rhs(x + c3 * h, w + h * (a31 * k1 + a32 * k2));
    const Mat3 k4 = rhs(x + c4 * h, w + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Mat3 k5 =
        rhs(x + c5 * h, w + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Mat3 k6 = rhs(
        x + h, w + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Mat3 wn =
        w + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Mat3 k7 = rhs(x + h, wn);
    const Mat3 errm =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double scale =
            opts.abs_tol +
            opts.rel_tol * std::max(std::abs(w(i, j)), std::abs(wn(i, j)));
        err = std::max(err, std::abs(errm(i, j)) / scale);
      }
    if (err <= 1.0) {
      x += h;
      w = wn;
      k1 = k7;  // FSAL
    }
    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    fac = std::clamp(fac, 0.2, 5.0);
    h *= fac;
    if (std::abs(h) < opts.h_min)
      throw StepFailure("jost integrator step size underflow");
  }
  return w;
}

Potential field_potential(const ComplexField& field) {
  return [&field](double x) { return field.at(x); };
}

void check_edges(const ComplexField& field, const JostOptions& opts) {
  const double lo = std::abs(field.values.front());
  const double hi = std::abs(field.values.back());
  const double worst = std::max(lo, hi);
  if (worst > opts.edge_fail_threshold)
    throw NonDecayingProfile("profile edge amplitude " + std::to_string(worst));
  if (worst > opts.edge_warn_threshold)
    std::cerr << "warning: profile edge amplitude " << worst
              << " above decay threshold\n";
}

}  // namespace

Mat3 jost_integrate(const Potential& u, double xa, double xb, cplx k,
                    JostDirection dir, const JostOptions& opts) {
  const JostRhs rhs{u, cplx(0.0, 2.0) * k};
  if (dir == JostDirection::from_minus_inf)
    return integrate_rk45(rhs, xa, xb, opts);
  return integrate_rk45(rhs, xb, xa, opts);
}

Mat3 jost_integrate(const ComplexField& field, cplx k, JostDirection dir,
                    const JostOptions& opts) {
  check_edges(field, opts);
  const Potential u = field_potential(field);
  return jost_integrate(u, field.xmin(), field.xmax(), k, dir, opts);
}

Mat3 transition_matrix(const Potential& u, double xa, double xb, cplx k,
                       const JostOptions& opts) {
  return jost_integrate(u, xa, xb, k, JostDirection::from_minus_inf, opts);
}

cplx det_a(const Potential& u, double xa, double xb, cplx k,
           const JostOptions& opts) {
  const Mat3 s = transition_matrix(u, xa, xb, k, opts);
  return s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
}

std::vector<std::size_t> TransitionData::failed_indices() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ok.size(); ++i)
    if (!ok[i]) idx.push_back(i);
  return idx;
}

double TransitionData::a_symmetry_residual() const {
  const std::size_t n = k_grid.size();
  Mat2 s1;
  s1 << 0, 1, 1, 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = n - 1 - i;
    if (std::abs(k_grid[i] + k_grid[m]) > 1e-9) continue;  // not mirrored
    if (!ok[i] || !ok[m]) continue;
    const Mat2 rhs = s1 * a_samples[m].conjugate() * s1;
    worst = std::max(worst, (a_samples[i] - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

double TransitionData::b_symmetry_residual() const {
  const std::size_t n = k_grid.size();
  Mat2 s1;
  s1 << 0, 1, 1, 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = n - 1 - i;
    if (std::abs(k_grid[i] + k_grid[m]) > 1e-9) continue;
    if (!ok[i] || !ok[m]) continue;
    const RowVec2 rhs = b_samples[m].conjugate() * s1;
    worst = std::max(worst, (b_samples[i] - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

double TransitionData::det_s_residual(const Potential& u, double xa, double xb)
    const {
  double worst = 0.0;
  JostOptions opts;
  for (std::size_t i = 0; i < k_grid.size(); i += std::max<std::size_t>(
           1, k_grid.size() / 16)) {
    const Mat3 s = transition_matrix(u, xa, xb, cplx(k_grid[i], 0.0), opts);
    worst = std::max(worst, std::abs(s.determinant() - 1.0));
  }
  return worst;
}

TransitionData compute_transition(const Potential& u, double xa, double xb,
                                  const std::vector<double>& k_grid,
                                  const JostOptions& opts) {
  TransitionData td;
  td.k_grid = k_grid;
  td.a_samples.resize(k_grid.size());
  td.b_samples.resize(k_grid.size());
  td.ok.assign(k_grid.size(), true);
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    try {
      const Mat3 s = transition_matrix(u, xa, xb, cplx(k_grid[i], 0.0), opts);
      td.a_samples[i] = s.topLeftCorner<2, 2>();
      td.b_samples[i] << s(2, 0), s(2, 1);
      const cplx da = td.a_samples[i].determinant();
      if (std::abs(da) < 1e-12) td.ok[i] = false;
    } catch (const Error&) {
      td.ok[i] = false;
      td.a_samples[i] = Mat2::Identity();
      td.b_samples[i].setZero();
    }
  }
  return td;
}

TransitionData compute_transition(const ComplexField& field,
                                  const std::vector<double>& k_grid,
                                  const JostOptions& opts) {
  check_edges(field, opts);
  const Potential u = field_potential(field);
  return compute_transition(u, field.xmin(), field.xmax(), k_grid, opts);
}

namespace {

// Continuous-phase tracking of det a along the box boundary; adaptive
// bisection keeps adjacent phase jumps below pi/2.
double phase_sweep(const std::function<cplx(double)>& f, double t0, double t1,
                   cplx f0, cplx f1, int depth) {
  const double d = std::arg(f1 / f0);
  if (std::abs(d) < 0.5 * M_PI || depth > 30) return d;
  const double tm = 0.5 * (t0 + t1);
  const cplx fm = f(tm);
  if (std::abs(fm) < 1e-13)
    throw RootCountMismatch("det a vanishes on the search box boundary");
  return phase_sweep(f, t0, tm, f0, fm, depth + 1) +
         phase_sweep(f, tm, t1, fm, f1, depth + 1);
}

}  // namespace

int winding_count(const Potential& u, double xa, double xb,
                  const SearchBox& box, const SpectrumOptions& opts) {
  const auto corner = [&](int i) -> cplx {
    switch (i & 3) {
      case 0: return {box.re_min, box.im_min};
      case 1: return {box.re_max, box.im_min};
      case 2: return {box.re_max, box.im_max};
      default: return {box.re_min, box.im_max};
    }
  };
  double total = 0.0;
  for (int edge = 0; edge < 4; ++edge) {
    const cplx z0 = corner(edge), z1 = corner(edge + 1);
    const auto f = [&](double t) {
      return det_a(u, xa, xb, z0 + t * (z1 - z0), opts.jost);
    };
    const int n0 = std::max(2, opts.winding_min_samples / 4);
    std::vector<cplx> vals(n0 + 1);
    for (int i = 0; i <= n0; ++i) {
      vals[i] = f(static_cast<double>(i) / n0);
      if (std::abs(vals[i]) < 1e-13)
        throw RootCountMismatch("det a vanishes on the search box boundary");
    }
    for (int i = 0; i < n0; ++i)
      total += phase_sweep(f, static_cast<double>(i) / n0,
                           static_cast<double>(i + 1) / n0, vals[i],
                           vals[i + 1], 0);
  }
  return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

std::vector<cplx> find_discrete_spectrum(const Potential& u, double xa,
                                         double xb, const SearchBox& box,
                                         const SpectrumOptions& opts) {
  if (box.im_min < 1e-3)
    throw Error("search box must avoid the real axis by margin >= 1e-3");
  const int expected = winding_count(u, xa, xb, box, opts);
  if (expected == 0) return {};

  const auto f = [&](cplx k) { return det_a(u, xa, xb, k, opts.jost); };
  const auto fprime = [&](cplx k) {
    const double h = opts.fd_step * std::max(1.0, std::abs(k));
    return (f(k + cplx(h, 0)) - f(k - cplx(h, 0))) / (2.0 * h);
  };

  std::vector<cplx> roots;
  const auto try_newton = [&](cplx k) {
    for (int it = 0; it < opts.newton_max_iter; ++it) {
      const cplx fk = f(k);
      if (std::abs(fk) < opts.newton_tol) {
        if (k.real() < box.re_min - 1e-9 || k.real() > box.re_max + 1e-9 ||
            k.imag() < box.im_min - 1e-9 || k.imag() > box.im_max + 1e-9)
          return;
        for (const cplx& r : roots)
          if (std::abs(r - k) < opts.dedupe_radius) return;
        const cplx dk = fprime(k);
        if (std::abs(dk) < 1e-8)
          throw DegenerateZero("non-simple zero of det a near " +
                               std::to_string(k.real()) + "+" +
                               std::to_string(k.imag()) + "i");
        if (k.imag() < opts.min_im)
          throw DegenerateZero("pole too close to the real axis");
        roots.push_back(k);
        return;
      }
      const cplx dk = fprime(k);
      if (std::abs(dk) == 0.0) return;
      cplx step = fk / dk;
      // keep iterates inside a slightly padded box
      const double cap = 0.5 * std::max(box.re_max - box.re_min,
                                        box.im_max - box.im_min);
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      k -= step;
      if (k.imag() < 0.2 * opts.min_im) return;  // drifted out
    }
  };

  for (int i = 0; i < opts.seed_re && static_cast<int>(roots.size()) < expected;
       ++i) {
    for (int j = 0; j < opts.seed_im; ++j) {
      const double re = box.re_min + (box.re_max - box.re_min) *
                                         (i + 0.5) / opts.seed_re;
      const double im = box.im_min + (box.im_max - box.im_min) *
                                         (j + 0.5) / opts.seed_im;
      try_newton(cplx(re, im));
      if (static_cast<int>(roots.size()) == expected) break;
    }
  }
  // mirror seeds help recover -conj pairs that sit between lattice nodes
  const std::size_t found = roots.size();
  for (std::size_t i = 0; i < found; ++i) try_newton(-std::conj(roots[i]));

  if (static_cast<int>(roots.size()) != expected)
    throw RootCountMismatch("winding count " + std::to_string(expected) +
                            " vs " + std::to_string(roots.size()) +
                            " converged roots");
  std::sort(roots.begin(), roots.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

std::vector<cplx> find_discrete_spectrum(const ComplexField& field,
                                         const SearchBox& box,
                                         const SpectrumOptions& opts) {
  const Potential u = field_potential(field);
  return find_discrete_spectrum(u, field.xmin(), field.xmax(), box, opts);
}

double edge_decay_rate(const ComplexField& field, double outer_fraction) {
  const std::size_t n = field.size();
  const std::size_t m = std::max<std::size_t>(4, static_cast<std::size_t>(
      outer_fraction * static_cast<double>(n)));
  const auto fit_rate = [&](bool left) -> double {
    std::vector<double> xs, ls;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t idx = left ? i : n - 1 - i;
      const double a = std::abs(field.values[idx]);
      if (a > 1e-280) {
        xs.push_back(std::abs(field.xs[idx]));
        ls.push_back(std::log(a));
      }
    }
    if (xs.size() < 4) return std::numeric_limits<double>::infinity();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ls[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ls[i];
    }
    const double nn = static_cast<double>(xs.size());
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    return -slope;  // decay rate in |x|
  };
  return std::min(fit_rate(true), fit_rate(false));
}

namespace {

Mat2 adj2(const Mat2& m) {
  Mat2 r;
  r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return r;
}

}  // namespace

std::vector<RowVec2> compute_norming_constants(const ComplexField& field,
                                               const std::vector<cplx>& poles,
                                               const JostOptions& opts) {
  const Potential u = field_potential(field);
  const double xa = field.xmin(), xb = field.xmax();
  const double rate = edge_decay_rate(field);
  std::vector<RowVec2> out;
  out.reserve(poles.size());
  for (const cplx& kj : poles) {
    if (rate < 2.0 * kj.imag() * 0.95)
      throw ContinuationUnreliable(
          "profile decay rate " + std::to_string(rate) +
          " too slow for pole height " + std::to_string(kj.imag()));
    const Mat3 s = transition_matrix(u, xa, xb, kj, opts);
    const Mat2 a = s.topLeftCorner<2, 2>();
    RowVec2 b;
    b << s(2, 0), s(2, 1);
    // d/dk det a by central difference with step-halving consistency check
    double h = 1e-4 * std::max(1.0, std::abs(kj));
    cplx d_prev(0, 0);
    cplx deriv(0, 0);
    for (int pass = 0; pass < 4; ++pass) {
      const cplx dp = det_a(u, xa, xb, kj + cplx(h, 0), opts);
      const cplx dm = det_a(u, xa, xb, kj - cplx(h, 0), opts);
      deriv = (dp - dm) / (2.0 * h);
      if (pass > 0 && std::abs(deriv - d_prev) <
                          1e-8 * std::max(1.0, std::abs(deriv)))
        break;
      d_prev = deriv;
      h *= 0.5;
    }
    if (std::abs(deriv) < 1e-8)
      throw DegenerateZero("d/dk det a vanishes at pole");
    out.push_back((b * adj2(a)) / deriv);
  }
  return out;
}

RowVec2 ScatteringData::gamma_at(double k) const {
  RowVec2 g;
  g.setZero();
  const std::size_t n = gamma_k.size();
  if (n < 4 || k < gamma_k.front() || k > gamma_k.back()) return g;
  const double h = gamma_k[1] - gamma_k[0];
  double s = (k - gamma_k.front()) / h;
  long i0 = static_cast<long>(std::floor(s)) - 1;
  i0 = std::clamp<long>(i0, 0, static_cast<long>(n) - 4);
  const double t = (k - gamma_k[static_cast<std::size_t>(i0)]) / h;
  const double t1 = t - 1.0, t2 = t - 2.0, t3 = t - 3.0;
  const double w0 = -t1 * t2 * t3 / 6.0;
  const double w1 = t * t2 * t3 / 2.0;
  const double w2 = -t * t1 * t3 / 2.0;
  const double w3 = t * t1 * t2 / 6.0;
  g = w0 * gamma_samples[static_cast<std::size_t>(i0)] +
      w1 * gamma_samples[static_cast<std::size_t>(i0) + 1] +
      w2 * gamma_samples[static_cast<std::size_t>(i0) + 2] +
      w3 * gamma_samples[static_cast<std::size_t>(i0) + 3];
  return g;
}

ScatteringData make_scattering_data(const TransitionData& td,
                                    const std::vector<cplx>& poles,
                                    const std::vector<RowVec2>& norming) {
  ScatteringData sd;
  sd.poles = poles;
  sd.norming = norming;
  sd.gamma_k = td.k_grid;
  sd.gamma_samples.resize(td.k_grid.size());
  for (std::size_t i = 0; i < td.k_grid.size(); ++i) {
    if (td.ok[i]) {
      sd.gamma_samples[i] = td.b_samples[i] * td.a_samples[i].inverse();
    } else {
      sd.gamma_samples[i].setZero();
    }
  }
  return sd;
}

}  // namespace ssq
