#pragma once

#include <functional>
#include <vector>

#include "ssq/field.hpp"

namespace ssq {

struct EvolutionConfig {
  double half_width = 40.0;        // domain [-X, X), right endpoint excluded
  std::size_t n = 2048;            // power of two
  double dt = 0.0;                 // 0 -> default 0.25 * dx
  double t_end = 1.0;
  double dealias_fraction = 2.0 / 3.0;
  bool nonlinearity_on = true;
  double instability_growth = 10.0;  // sup-norm growth gate per 100 steps
  bool auto_halve_dt = true;         // one retry with dt/2 on instability
  double checkpoint_every = 0.0;     // 0 -> no checkpoints

  double dx() const { return 2.0 * half_width / static_cast<double>(n); }
  double effective_dt() const { return dt > 0.0 ? dt : 0.25 * dx(); }
};

struct EvolutionLogEntry {
  double t;
  double l2;
};

struct EvolutionResult {
  ComplexField field;
  std::vector<EvolutionLogEntry> conservation_log;
  std::vector<ComplexField> checkpoints;
  double dt_used = 0.0;
  bool dt_was_halved = false;
};

/// Strang split-step integrator for u_t + u_xxx + 6|u|^2 u_x + 3u(|u|^2)_x = 0
/// on a periodic grid: exact linear half-steps e^{i k^3 dt/2} in Fourier
/// space around an RK4 step of the dealiased nonlinear part.
EvolutionResult evolve(const ComplexField& initial, const EvolutionConfig& cfg);

/// Trapezoid approximation of Int |u|^2 dx.
double conserved_l2(const ComplexField& field);

/// Exact solution of the linear part u_t = -u_xxx on the periodic grid
/// (per-mode phase rotation), for oracle comparisons.
ComplexField linear_exact_evolution(const ComplexField& initial, double t_end,
                                    const EvolutionConfig& cfg);

/// Samples a profile function onto the periodic grid of the config at t = 0.
ComplexField sample_on_periodic_grid(const std::function<cplx(double)>& u0,
                                     const EvolutionConfig& cfg);

}  // namespace ssq
