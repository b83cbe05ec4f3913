#include "ssq/evolve.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <iostream>

#include "ssq/errors.hpp"

namespace ssq {
namespace {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// RAII wrapper around a pair of in-place FFTW plans on one buffer.
class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    buf_ = fftw_alloc_complex(n);
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_FORWARD,
                            FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  ~Fft() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(std::vector<cplx>& v) {
    std::memcpy(buf_, v.data(), n_ * sizeof(fftw_complex));
    fftw_execute(fwd_);
    std::memcpy(v.data(), buf_, n_ * sizeof(fftw_complex));
  }
  void backward(std::vector<cplx>& v) {  // normalized
    std::memcpy(buf_, v.data(), n_ * sizeof(fftw_complex));
    fftw_execute(bwd_);
    const double s = 1.0 / static_cast<double>(n_);
    auto* out = reinterpret_cast<cplx*>(buf_);
    for (std::size_t i = 0; i < n_; ++i) v[i] = out[i] * s;
  }

 private:
  std::size_t n_;
  fftw_complex* buf_;
  fftw_plan fwd_, bwd_;
};

struct Stepper {
  const EvolutionConfig& cfg;
  std::size_t n;
  double L;  // full period
  Fft fft;
  std::vector<double> wavenumbers;
  std::vector<bool> keep;  // dealias mask
  std::vector<cplx> half_phase;

  explicit Stepper(const EvolutionConfig& c)
      : cfg(c), n(c.n), L(2.0 * c.half_width), fft(c.n), wavenumbers(c.n),
        keep(c.n, true), half_phase(c.n) {
    const double dk = 2.0 * M_PI / L;
    const double kmax = dk * static_cast<double>(n / 2);
    for (std::size_t i = 0; i < n; ++i) {
      const long m = i <= n / 2 ? static_cast<long>(i)
                                : static_cast<long>(i) - static_cast<long>(n);
      wavenumbers[i] = dk * static_cast<double>(m);
      keep[i] = std::abs(wavenumbers[i]) <= cfg.dealias_fraction * kmax;
    }
  }

  void set_dt(double dt) {
    for (std::size_t i = 0; i < n; ++i) {
      // u_t = -u_xxx  =>  d/dt u^ = i k^3 u^
      const double k3 = wavenumbers[i] * wavenumbers[i] * wavenumbers[i];
      half_phase[i] = std::polar(1.0, k3 * dt * 0.5);
    }
  }

  void linear_half(std::vector<cplx>& u) {
    fft.forward(u);
    for (std::size_t i = 0; i < n; ++i) u[i] *= half_phase[i];
    fft.backward(u);
  }

  void spectral_derivative(const std::vector<cplx>& u, std::vector<cplx>& du) {
    du = u;
    fft.forward(du);
    for (std::size_t i = 0; i < n; ++i) {
      du[i] *= keep[i] ? cplx(0.0, wavenumbers[i]) : cplx(0.0, 0.0);
    }
    fft.backward(du);
  }

  void dealias(std::vector<cplx>& u) {
    fft.forward(u);
    for (std::size_t i = 0; i < n; ++i)
      if (!keep[i]) u[i] = cplx(0, 0);
    fft.backward(u);
  }

  // N(u) = -6|u|^2 u_x - 3 u (|u|^2)_x with spectral derivatives.
  void nonlinear_rhs(const std::vector<cplx>& u, std::vector<cplx>& out,
                     std::vector<cplx>& scratch, std::vector<cplx>& mod2) {
    spectral_derivative(u, scratch);  // u_x
    mod2.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      mod2[i] = cplx(std::norm(u[i]), 0.0);
    std::vector<cplx> dmod2;
    spectral_derivative(mod2, dmod2);  // (|u|^2)_x
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = -6.0 * std::norm(u[i]) * scratch[i] - 3.0 * u[i] * dmod2[i];
    dealias(out);
  }

  void rk4_nonlinear(std::vector<cplx>& u, double dt) {
    std::vector<cplx> k1, k2, k3, k4, tmp(n), scratch, mod2;
    nonlinear_rhs(u, k1, scratch, mod2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
    nonlinear_rhs(tmp, k2, scratch, mod2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
    nonlinear_rhs(tmp, k3, scratch, mod2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
    nonlinear_rhs(tmp, k4, scratch, mod2);
    for (std::size_t i = 0; i < n; ++i)
      u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
};

double sup_norm(const std::vector<cplx>& u) {
  double m = 0.0;
  for (const cplx& v : u) m = std::max(m, std::abs(v));
  return m;
}

ComplexField grid_field(const EvolutionConfig& cfg, std::vector<cplx> vals,
                        double t) {
  ComplexField f;
  f.xs.resize(cfg.n);
  const double dx = cfg.dx();
  for (std::size_t i = 0; i < cfg.n; ++i)
    f.xs[i] = -cfg.half_width + dx * static_cast<double>(i);
  f.values = std::move(vals);
  f.time = t;
  return f;
}

EvolutionResult run_once(const ComplexField& initial,
                         const EvolutionConfig& cfg, double dt) {
  Stepper st(cfg);
  const long steps = std::lround(std::ceil(cfg.t_end / dt - 1e-12));
  dt = cfg.t_end / static_cast<double>(steps);
  st.set_dt(dt);

  EvolutionResult res;
  res.dt_used = dt;
  std::vector<cplx> u = initial.values;
  double t = 0.0;
  double ref_sup = sup_norm(u);
  long last_check = 0;
  double next_checkpoint =
      cfg.checkpoint_every > 0 ? cfg.checkpoint_every : -1.0;
  res.conservation_log.push_back({0.0, conserved_l2(initial)});

  for (long s = 0; s < steps; ++s) {
    st.linear_half(u);
    if (cfg.nonlinearity_on) st.rk4_nonlinear(u, dt);
    st.linear_half(u);
    t = dt * static_cast<double>(s + 1);

    if (s - last_check >= 100) {
      const double cur = sup_norm(u);
      if (!std::isfinite(cur) || cur > cfg.instability_growth * ref_sup)
        throw Instability("sup norm grew from " + std::to_string(ref_sup) +
                          " to " + std::to_string(cur));
      ref_sup = std::max(ref_sup, cur);
      last_check = s;
      res.conservation_log.push_back(
          {t, conserved_l2(grid_field(cfg, u, t))});
    }
    if (next_checkpoint > 0 && t + 1e-12 >= next_checkpoint) {
      res.checkpoints.push_back(grid_field(cfg, u, t));
      next_checkpoint += cfg.checkpoint_every;
    }
  }
  if (!std::isfinite(sup_norm(u)))
    throw Instability("non-finite field at t_end");
  res.field = grid_field(cfg, std::move(u), cfg.t_end);
  res.conservation_log.push_back({cfg.t_end, conserved_l2(res.field)});
  return res;
}

}  // namespace

double conserved_l2(const ComplexField& field) { return l2_norm_squared(field); }

ComplexField sample_on_periodic_grid(const std::function<cplx(double)>& u0,
                                     const EvolutionConfig& cfg) {
  std::vector<cplx> vals(cfg.n);
  const double dx = cfg.dx();
  for (std::size_t i = 0; i < cfg.n; ++i)
    vals[i] = u0(-cfg.half_width + dx * static_cast<double>(i));
  return grid_field(cfg, std::move(vals), 0.0);
}

EvolutionResult evolve(const ComplexField& initial, const EvolutionConfig& cfg) {
  if (!is_power_of_two(cfg.n)) throw Error("grid size must be a power of two");
  if (initial.size() != cfg.n)
    throw GridMismatch("initial field size does not match config");
  const double edge = std::max(std::abs(initial.values.front()),
                               std::abs(initial.values.back()));
  if (edge > 1e-10)
    throw NonPeriodicInput("edge amplitude " + std::to_string(edge));

  const double dt0 = cfg.effective_dt();
  // advective stability guard for the cubic nonlinear substep
  double sup = sup_norm(initial.values);
  const double speed = 9.0 * sup * sup;
  if (speed > 0 && dt0 > 2.8 * cfg.dx() / speed)
    std::cerr << "warning: dt " << dt0 << " above advective guard "
              << 2.8 * cfg.dx() / speed << "\n";

  try {
    return run_once(initial, cfg, dt0);
  } catch (const Instability&) {
    if (!cfg.auto_halve_dt) throw;
  }
  EvolutionResult res = run_once(initial, cfg, 0.5 * dt0);  // may throw again
  res.dt_was_halved = true;
  return res;
}

ComplexField linear_exact_evolution(const ComplexField& initial, double t_end,
                                    const EvolutionConfig& cfg) {
  if (!is_power_of_two(cfg.n)) throw Error("grid size must be a power of two");
  Stepper st(cfg);
  std::vector<cplx> u = initial.values;
  st.fft.forward(u);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const double k3 =
        st.wavenumbers[i] * st.wavenumbers[i] * st.wavenumbers[i];
    u[i] *= std::polar(1.0, k3 * t_end);
  }
  st.fft.backward(u);
  return grid_field(cfg, std::move(u), initial.time + t_end);
}

}  // namespace ssq
