#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ssq/field.hpp"
#include "ssq/scattering.hpp"

namespace ssq {

/// 2i t theta(k) with t theta = kx + 4 k^3 t evaluated in combined form (no
/// x/t split, so t = 0 is regular).
cplx two_i_t_theta(cplx k, double x, double t);

struct SolitonOptions {
  bool allow_rescale = true;     // clamp far-field exponents instead of failing
  double exp_clamp = 250.0;      // |Re 2it theta| saturation under rescaling
  double overflow_threshold = 700.0;
  double rcond_min = 1e-14;      // condition threshold 1e14
  double residual_tol = 1e-10;   // relative residual of the assembled system
  double symmetry_tol = 1e-8;    // reconstruction symmetry gate
};

/// Solved reflectionless residue system: per pole j the 3x2 alpha block and
/// the 3-vector beta, i.e. the residue matrices of the Plemelj ansatz
///   M(k) = I + sum_j A_j/(k - k_j) + sum_j B_j/(k - k_j^*).
struct ResidueSolution {
  std::vector<cplx> poles;
  std::vector<Eigen::Matrix<cplx, 3, 2>> alpha;
  std::vector<Eigen::Vector3cd> beta;
  double residual = 0.0;  // relative residual of the assembled linear system
  double rcond = 1.0;
  double x = 0.0, t = 0.0;

  Mat3 eval(cplx k) const;        // Plemelj ansatz at a regular point
  std::size_t size() const { return poles.size(); }
};

/// Assembles and solves the residue linear system for the given reflectionless
/// scattering data at (x, t): unknowns are the 6 alpha and 3 beta scalars per
/// pole; dense LU with partial pivoting plus one refinement step.
ResidueSolution assemble_and_solve(const std::vector<cplx>& poles,
                                   const std::vector<RowVec2>& norming,
                                   double x, double t,
                                   const SolitonOptions& opts = {});

/// u = 2i sum_j beta_{j,1}; checks the companion 2i sum_j beta_{j,2} against
/// conj(u) and throws SymmetryBroken on mismatch.
cplx reconstruct(const ResidueSolution& sol, bool check_symmetry = true);

/// Reconstructed field on a grid at time t.
ComplexField soliton_field(const std::vector<cplx>& poles,
                           const std::vector<RowVec2>& norming,
                           const std::vector<double>& xs, double t,
                           const SolitonOptions& opts = {});
ComplexField soliton_field(const ScatteringData& sd,
                           const std::vector<double>& xs, double t,
                           const SolitonOptions& opts = {});

/// Space-time cone C(v1,v2) = {x = v t, v in [v2, v1]} and the induced
/// spectral band I = [-v1/4, -v2/4].
struct ConeSpec {
  double v1 = 0.0;
  double v2 = 0.0;  // v2 <= v1
  double band_lo() const { return -v1 / 4.0; }
  double band_hi() const { return -v2 / 4.0; }
  bool region1() const { return v1 < 0.0; }
  bool region2() const { return v2 > 0.0; }
};

/// Pole velocity band coordinate 3 Re^2 k - Im^2 k.
double band_coordinate(cplx k);

struct FilteredData {
  std::vector<cplx> poles;
  std::vector<RowVec2> norming;
  bool approximate_delta = false;  // entrywise-Plemelj delta was inexact
};

/// sigma_d(I): keeps poles with band coordinate inside I. In region I the
/// norming constants pick up delta^{-1}(k_j) (det delta(k_j))^{-1} evaluated
/// from the sampled reflection coefficient at the phase point k0; in region II
/// the residue data carries bare c_j and this reduces to band filtering.
/// k0 <= 0 or missing gamma leaves the norming constants untouched.
FilteredData cone_filter(const ScatteringData& sd, const ConeSpec& cone,
                         double k0 = 0.0, double quad_tol = 1e-11);

/// mu(I) = min over excluded poles of Im k_j * dist(band coordinate, I);
/// +infinity when every pole is inside the band.
double mu_of_cone(const ScatteringData& sd, const ConeSpec& cone);

}  // namespace ssq
