#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "ssq/field.hpp"

namespace ssq {

struct PainleveSolution {
  std::vector<double> ys;
  std::vector<cplx> up;
  cplx kappa{0.0, 0.0};
  double residual_max = 0.0;

  cplx up_at(double y) const;  // cubic interpolation, zero outside the grid
};

struct PainleveOptions {
  int max_newton_iters = 60;
  double tol = 1e-12;
  double blowup_norm = 50.0;
};

/// Two-point solve of 3 u'' - y u + 24 |u|^2 u = 0 on [y_min, y_max] with the
/// right tail matched to the linearized solution kappa Ai(3^{-1/3} y); fourth
/// order finite differences with damped Newton. The equation carries a
/// constant phase, so the real profile is solved for |kappa| and rotated.
PainleveSolution solve_painleve(cplx kappa, double y_min = -15.0,
                                double y_max = 12.0, std::size_t n = 3001,
                                const PainleveOptions& opts = {});

/// Linearization oracle (same evaluator as special.hpp, re-exposed here).
double airy_reference(double y);

struct KappaFit {
  cplx kappa{0.0, 0.0};
  std::vector<cplx> per_run;
  std::vector<double> residuals;  // relative fit residual per run
};

/// Least-squares fit of kappa from rescaled PDE profiles:
/// t^{1/3} u(y t^{1/3}, t) ~ kappa Ai(3^{-1/3} y) on the linear tail window.
KappaFit match_kappa_from_pde(
    const std::vector<std::pair<double, ComplexField>>& runs,
    double y_fit_lo = 2.0, double y_fit_hi = 5.0);

}  // namespace ssq
