#pragma once

#include <complex>

#include "ssq/painleve.hpp"
#include "ssq/scattering.hpp"
#include "ssq/soliton.hpp"

namespace ssq {

enum class Region { I, II, III };

struct RegionTag {
  Region region = Region::III;
  double k0 = 0.0;        // |phase point|; on the imaginary axis for x > 0
  bool k0_imaginary = false;
  double xi = 0.0;        // x / t
  double y = 0.0;         // x / t^{1/3}
};

/// Region III iff |x/t^{1/3}| <= y_cut, else sign of x picks I or II.
RegionTag classify(double x, double t, double y_cut = 2.0);

/// Re i theta(k) = 4 (Im^2 k - 3 Re^2 k + 3 k0^2) Im k.
double re_i_theta(cplx k, double k0);

struct AsymptoticEvaluation {
  RegionTag region;
  cplx leading{0.0, 0.0};
  cplx correction{0.0, 0.0};
  double claimed_error_order = 0.0;
  bool approximate_delta = false;
};

/// Region I: leading N(I)-soliton plus the t^{-1/2} radiation correction
///   h = (1/sqrt(48 k0)) (M^out(k0) M1^A0 M^out(k0)^-1
///                        + M^out(-k0) M1^B0 M^out(-k0)^-1)_{13}.
AsymptoticEvaluation region1_evaluate(const ScatteringData& sd,
                                      const ConeSpec& cone, double x, double t,
                                      double quad_tol = 1e-11);

/// Region II: band-filtered soliton sum with bare norming constants; the
/// correction is absorbed into the O(t^{-1}) error.
AsymptoticEvaluation region2_evaluate(const ScatteringData& sd,
                                      const ConeSpec& cone, double x,
                                      double t);

/// Region III: t^{-1/3} u_P(x t^{-1/3}) with error order 2/(3p) - 1/2.
AsymptoticEvaluation region3_evaluate(const PainleveSolution& ps, double x,
                                      double t, double p = 6.0);

}  // namespace ssq
