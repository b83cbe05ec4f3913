#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ssq {

using cplx = std::complex<double>;

/// Sampled complex profile u(x) on a uniform grid at a fixed time.
/// The 2-vector potential of the spectral problem is always q = (u, u*)^T,
/// so only u is stored.
struct ComplexField {
  std::vector<double> xs;
  std::vector<cplx> values;
  double time = 0.0;

  ComplexField() = default;
  ComplexField(std::vector<double> xs_, std::vector<cplx> values_, double t);

  std::size_t size() const { return xs.size(); }
  double dx() const;
  double xmin() const { return xs.front(); }
  double xmax() const { return xs.back(); }

  /// Cubic (4-point Lagrange) interpolation; zero outside the grid.
  cplx at(double x) const;

  /// Throws if the grid is non-uniform (relative 1e-12) or values are not finite.
  void validate() const;
};

ComplexField make_uniform_field(double xmin, double xmax, std::size_t n,
                                const std::vector<cplx>& values, double t);

/// Trapezoid rule for integral of |u|^2 over the grid.
double l2_norm_squared(const ComplexField& f);

/// Max pointwise |f - g| on identical grids; throws GridMismatch otherwise.
double linf_diff(const ComplexField& f, const ComplexField& g);

}  // namespace ssq
