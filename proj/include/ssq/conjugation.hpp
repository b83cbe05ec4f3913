#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "ssq/scattering.hpp"

namespace ssq {

/// gamma(k) sampler on the real line (1x2 row vector).
using GammaFn = std::function<RowVec2(double)>;

/// nu = -(1/2pi) log(1 + |gamma(k0)|^2); always <= 0.
double compute_nu(const RowVec2& gamma_at_k0);

/// X(k) = (1/2pi i) Int_{-k0}^{k0} log((1+|g(xi)|^2)/(1+|g(k0)|^2)) dxi/(xi-k)
/// for k off the cut [-k0, k0]. Throws OnCutEvaluation within 1e-8 of the cut.
cplx compute_chi(const GammaFn& gamma, double k0, cplx k,
                 double quad_tol = 1e-11);

/// Endpoint value X(+-k0) (the integrand stays bounded there because the log
/// ratio vanishes at both endpoints for symmetry-respecting gamma).
cplx compute_chi_endpoint(const GammaFn& gamma, double k0, int sign,
                          double quad_tol = 1e-11);

/// det delta(k) = ((k-k0)/(k+k0))^{i nu} e^{X(k)}, principal branch.
cplx compute_det_delta(double nu, cplx chi, cplx k, double k0);

/// Scalar conjugation data bundled with evaluators.
struct ConjugationScalars {
  double k0 = 0.0;
  double nu = 0.0;
  GammaFn gamma;
  double quad_tol = 1e-11;

  cplx chi_at(cplx k) const { return compute_chi(gamma, k0, k, quad_tol); }
  cplx det_delta_at(cplx k) const {
    return compute_det_delta(nu, chi_at(k), k, k0);
  }
};

ConjugationScalars make_conjugation(const GammaFn& gamma, double k0,
                                    double quad_tol = 1e-11);

struct LocalModelCoeffs {
  ColVec2 beta12;
  RowVec2 beta21;
  cplx delta_A{1.0, 0.0};
  Mat3 M1_A0 = Mat3::Zero();
  Mat3 M1_B0 = Mat3::Zero();
};

/// Parabolic-cylinder model coefficients entering the t^{-1/2} correction:
///   beta12 = nu Gamma(-i nu) e^{pi nu/2} e^{-i pi/4} / sqrt(2 pi) sigma2
///            gamma^T(k0),
///   beta21 = -beta12^dagger,   delta_A = e^{X(-k0) - 8 i tau} (192 tau)^{i
///   nu/2} with tau = k0^3 t,
///   M1^{A0} = [[0, i delta_A^{-2} beta12], [-i delta_A^2 beta21, 0]],
///   M1^{B0} = -varsigma (M1^{A0})^* varsigma.
LocalModelCoeffs compute_local_coeffs(const RowVec2& gamma_at_plus_k0,
                                      const RowVec2& gamma_at_minus_k0,
                                      double nu, cplx chi_at_minus_k0,
                                      double k0, double t);

/// The 3x3 involution varsigma = [[sigma1, 0], [0, 1]].
Mat3 varsigma();

struct DeltaMatrixResult {
  Mat2 delta_inv;      // delta^{-1}(k)
  bool approximate;    // true when gamma^dag gamma family does not commute
};

/// delta^{-1}(k) for k off the cut via the entrywise Plemelj representation
/// exp(-H(k)), H(k) = (1/2pi i) Int log(I + gamma^dag gamma)/(xi - k) dxi.
/// Exact when the gamma^dag gamma family commutes across the band; flagged
/// approximate otherwise.
DeltaMatrixResult delta_matrix_inverse(const GammaFn& gamma, double k0, cplx k,
                                       double quad_tol = 1e-11);

/// Closed-form 2x2 matrix exponential.
Mat2 expm2(const Mat2& m);

}  // namespace ssq
