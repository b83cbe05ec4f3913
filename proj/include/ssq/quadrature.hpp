#pragma once

#include <complex>
#include <functional>

namespace ssq {

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (G7,K15) for complex-valued integrands on [a,b].
/// Recursive bisection until the local K15-G7 discrepancy meets the tolerance.
QuadResult integrate_gk(const std::function<std::complex<double>(double)>& f,
                        double a, double b, double abs_tol = 1e-12,
                        int max_depth = 40);

/// Same, but splits [a,b] at the given interior breakpoints first.
QuadResult integrate_gk_split(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const std::vector<double>& breakpoints, double abs_tol = 1e-12,
    int max_depth = 40);

}  // namespace ssq
