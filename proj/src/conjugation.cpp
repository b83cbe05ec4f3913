#include "ssq/conjugation.hpp"

#include <cmath>

#include "ssq/errors.hpp"
#include "ssq/quadrature.hpp"
#include "ssq/special.hpp"

namespace ssq {
namespace {

double log1p_norm2(const RowVec2& g) {
  return std::log1p(std::norm(g(0)) + std::norm(g(1)));
}

void require_off_cut(double k0, cplx k) {
  if (std::abs(k.imag()) < 1e-8 && k.real() > -k0 - 1e-8 &&
      k.real() < k0 + 1e-8)
    throw OnCutEvaluation("k within 1e-8 of the cut [-k0, k0]");
}

}  // namespace

double compute_nu(const RowVec2& gamma_at_k0) {
  return -log1p_norm2(gamma_at_k0) / (2.0 * M_PI);
}

cplx compute_chi(const GammaFn& gamma, double k0, cplx k, double quad_tol) {
  require_off_cut(k0, k);
  const double Lk0 = log1p_norm2(gamma(k0));
  const auto integrand = [&](double xi) -> cplx {
    return (log1p_norm2(gamma(xi)) - Lk0) / (xi - k);
  };
  const QuadResult q = integrate_gk_split(integrand, -k0, k0,
                                          {-0.5 * k0, 0.0, 0.5 * k0}, quad_tol);
  return q.value / cplx(0.0, 2.0 * M_PI);
}

cplx compute_chi_endpoint(const GammaFn& gamma, double k0, int sign,
                          double quad_tol) {
  const double kp = sign >= 0 ? k0 : -k0;
  const double Lk0 = log1p_norm2(gamma(k0));
  const auto integrand = [&](double xi) -> cplx {
    const double num = log1p_norm2(gamma(xi)) - Lk0;
    const double den = xi - kp;
    if (std::abs(den) < 1e-14) return cplx(0.0, 0.0);
    return cplx(num / den, 0.0);
  };
  const QuadResult q = integrate_gk_split(
      integrand, -k0, k0, {-0.5 * k0, 0.0, 0.5 * k0, kp * (1.0 - 1e-7)},
      quad_tol);
  return q.value / cplx(0.0, 2.0 * M_PI);
}

cplx compute_det_delta(double nu, cplx chi, cplx k, double k0) {
  require_off_cut(k0, k);
  const cplx ratio = (k - k0) / (k + k0);
  return std::pow(ratio, cplx(0.0, nu)) * std::exp(chi);
}

ConjugationScalars make_conjugation(const GammaFn& gamma, double k0,
                                    double quad_tol) {
  ConjugationScalars cs;
  cs.k0 = k0;
  cs.nu = compute_nu(gamma(k0));
  cs.gamma = gamma;
  cs.quad_tol = quad_tol;
  return cs;
}

Mat3 varsigma() {
  Mat3 v;
  v << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  return v;
}

LocalModelCoeffs compute_local_coeffs(const RowVec2& gamma_at_plus_k0,
                                      const RowVec2& gamma_at_minus_k0,
                                      double nu, cplx chi_at_minus_k0,
                                      double k0, double t) {
  (void)gamma_at_minus_k0;  // beta21 is constructed as -beta12^dagger
  LocalModelCoeffs lc;
  if (nu == 0.0) {
    lc.beta12.setZero();
    lc.beta21.setZero();
    lc.delta_A = 1.0;
    return lc;
  }
  const cplx gam = gamma_complex(cplx(0.0, -nu));
  const cplx pref = nu * gam * std::exp(M_PI * nu / 2.0) *
                    std::polar(1.0, -M_PI / 4.0) / std::sqrt(2.0 * M_PI);
  Mat2 sigma2;
  sigma2 << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
  lc.beta12 = pref * (sigma2 * gamma_at_plus_k0.transpose());
  lc.beta21 = -lc.beta12.adjoint();

  const double tau = k0 * k0 * k0 * t;
  lc.delta_A = std::exp(chi_at_minus_k0 - cplx(0.0, 8.0 * tau)) *
               std::pow(cplx(192.0 * tau, 0.0), cplx(0.0, nu / 2.0));

  const cplx ia = cplx(0, 1) / (lc.delta_A * lc.delta_A);
  const cplx ib = cplx(0, -1) * (lc.delta_A * lc.delta_A);
  lc.M1_A0.setZero();
  lc.M1_A0(0, 2) = ia * lc.beta12(0);
  lc.M1_A0(1, 2) = ia * lc.beta12(1);
  lc.M1_A0(2, 0) = ib * lc.beta21(0);
  lc.M1_A0(2, 1) = ib * lc.beta21(1);

  const Mat3 vs = varsigma();
  lc.M1_B0 = -vs * lc.M1_A0.conjugate() * vs;
  return lc;
}

Mat2 expm2(const Mat2& m) {
  const cplx mu = 0.5 * (m(0, 0) + m(1, 1));
  const cplx d = 0.5 * (m(0, 0) - m(1, 1));
  const cplx s2 = d * d + m(0, 1) * m(1, 0);
  const cplx s = std::sqrt(s2);
  cplx ch, shs;  // cosh(s), sinh(s)/s
  if (std::abs(s) < 1e-4) {
    ch = 1.0 + s2 / 2.0 + s2 * s2 / 24.0;
    shs = 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
  } else {
    ch = std::cosh(s);
    shs = std::sinh(s) / s;
  }
  const Mat2 dev = m - mu * Mat2::Identity();
  return std::exp(mu) * (ch * Mat2::Identity() + shs * dev);
}

DeltaMatrixResult delta_matrix_inverse(const GammaFn& gamma, double k0, cplx k,
                                       double quad_tol) {
  require_off_cut(k0, k);
  const auto logm = [&](double xi) -> Mat2 {
    const RowVec2 g = gamma(xi);
    const double n2 = std::norm(g(0)) + std::norm(g(1));
    if (n2 < 1e-300) return Mat2::Zero();
    const Mat2 gg = g.adjoint() * g;  // gamma^dag gamma, rank 1
    return (std::log1p(n2) / n2) * gg;
  };
  // commutativity scan over the band
  bool approx = false;
  {
    const int ns = 9;
    std::vector<Mat2> ps;
    for (int i = 0; i < ns; ++i) {
      const double xi = -k0 + 2.0 * k0 * (i + 0.5) / ns;
      ps.push_back(logm(xi));
    }
    double scale = 1e-300;
    for (const Mat2& p : ps) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    for (int i = 0; i < ns && !approx; ++i)
      for (int j = i + 1; j < ns; ++j) {
        const Mat2 comm = ps[i] * ps[j] - ps[j] * ps[i];
        if (comm.cwiseAbs().maxCoeff() > 1e-10 * scale * scale) {
          approx = true;
          break;
        }
      }
  }
  Mat2 h = Mat2::Zero();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const auto integrand = [&](double xi) -> cplx {
        return logm(xi)(r, c) / (xi - k);
      };
      const QuadResult q = integrate_gk_split(
          integrand, -k0, k0, {-0.5 * k0, 0.0, 0.5 * k0}, quad_tol);
      h(r, c) = q.value / cplx(0.0, 2.0 * M_PI);
    }
  return {expm2(-h), approx};
}

}  // namespace ssq
