#include "ssq/soliton.hpp"

#include <algorithm>
#include <cmath>

#include "ssq/conjugation.hpp"
#include "ssq/errors.hpp"
#include "ssq/quadrature.hpp"

namespace ssq {

cplx two_i_t_theta(cplx k, double x, double t) {
  return cplx(0.0, 2.0) * (k * x + 4.0 * k * k * k * t);
}

Mat3 ResidueSolution::eval(cplx k) const {
  Mat3 m = Mat3::Identity();
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const cplx da = 1.0 / (k - poles[j]);
    const cplx db = 1.0 / (k - std::conj(poles[j]));
    m.block<3, 2>(0, 0) += da * alpha[j];
    m.col(2) += db * beta[j];
  }
  return m;
}

ResidueSolution assemble_and_solve(const std::vector<cplx>& poles,
                                   const std::vector<RowVec2>& norming,
                                   double x, double t,
                                   const SolitonOptions& opts) {
  if (poles.size() != norming.size())
    throw Error("pole/norming count mismatch");
  const std::size_t P = poles.size();
  ResidueSolution sol;
  sol.poles = poles;
  sol.x = x;
  sol.t = t;
  sol.alpha.assign(P, Eigen::Matrix<cplx, 3, 2>::Zero());
  sol.beta.assign(P, Eigen::Vector3cd::Zero());
  if (P == 0) return sol;

  for (std::size_t i = 0; i < P; ++i) {
    if (poles[i].imag() <= 0.0)
      throw SystemSingular("pole not in the upper half-plane");
    for (std::size_t j = i + 1; j < P; ++j)
      if (std::abs(poles[i] - poles[j]) < 1e-12)
        throw SystemSingular("duplicate poles");
  }

  // Residue weights gamma_j = c_j e^{2it theta(k_j)}; the shared real part of
  // the exponent is saturated at +-exp_clamp, which leaves the solution
  // unchanged at double precision once the pole is deep in its far field.
  std::vector<RowVec2> gam(P);
  std::vector<ColVec2> gamt(P);
  for (std::size_t j = 0; j < P; ++j) {
    const cplx w = two_i_t_theta(poles[j], x, t);
    double re = w.real();
    if (std::abs(re) > opts.overflow_threshold && !opts.allow_rescale)
      throw ExponentOverflow("Re(2it theta) = " + std::to_string(re));
    re = std::clamp(re, -opts.exp_clamp, opts.exp_clamp);
    const cplx z = std::exp(cplx(re, w.imag()));
    gam[j] = norming[j] * z;
    gamt[j] = -norming[j].adjoint() * std::conj(z);
  }

  // Unknown layout per pole: 6 alpha scalars then 3 beta scalars.
  const auto idxA = [](std::size_t j, int m, int n) {
    return static_cast<Eigen::Index>(9 * j + 2 * static_cast<std::size_t>(m) +
                                     static_cast<std::size_t>(n));
  };
  const auto idxB = [](std::size_t j, int m) {
    return static_cast<Eigen::Index>(9 * j + 6 + static_cast<std::size_t>(m));
  };
  const Eigen::Index dim = static_cast<Eigen::Index>(9 * P);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);

  for (std::size_t j = 0; j < P; ++j) {
    for (int m = 0; m < 3; ++m) {
      for (int n = 0; n < 2; ++n) {
        const Eigen::Index row = idxA(j, m, n);
        for (std::size_t tt = 0; tt < P; ++tt)
          M(row, idxB(tt, m)) -= gam[j](n) / (poles[j] - std::conj(poles[tt]));
        if (m == 2) rhs(row) = gam[j](n);
      }
      const Eigen::Index row = idxB(j, m);
      for (std::size_t tt = 0; tt < P; ++tt) {
        const cplx den = std::conj(poles[j]) - poles[tt];
        M(row, idxA(tt, m, 0)) -= gamt[j](0) / den;
        M(row, idxA(tt, m, 1)) -= gamt[j](1) / den;
      }
      if (m < 2) rhs(row) = gamt[j](m);
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  const double rc = lu.rcond();
  sol.rcond = rc;
  if (!(rc > opts.rcond_min))
    throw SystemSingular("condition estimate " + std::to_string(1.0 / rc));
  Eigen::VectorXcd sex = lu.solve(rhs);
  // one step of iterative refinement
  const Eigen::VectorXcd resid = rhs - M * sex;
  sex += lu.solve(resid);

  const double num = (rhs - M * sex).cwiseAbs().maxCoeff();
  const double den = M.cwiseAbs().maxCoeff() * sex.cwiseAbs().maxCoeff() +
                     rhs.cwiseAbs().maxCoeff();
  sol.residual = den > 0 ? num / den : 0.0;
  if (sol.residual > opts.residual_tol)
    throw SystemSingular("solve residual " + std::to_string(sol.residual));

  for (std::size_t j = 0; j < P; ++j) {
    for (int m = 0; m < 3; ++m) {
      for (int n = 0; n < 2; ++n) sol.alpha[j](m, n) = sex(idxA(j, m, n));
      sol.beta[j](m) = sex(idxB(j, m));
    }
  }
  return sol;
}

cplx reconstruct(const ResidueSolution& sol, bool check_symmetry) {
  cplx b1(0, 0), b2(0, 0);
  for (std::size_t j = 0; j < sol.size(); ++j) {
    b1 += sol.beta[j](0);
    b2 += sol.beta[j](1);
  }
  const cplx u = cplx(0, 2) * b1;
  const cplx comp = cplx(0, 2) * b2;
  if (check_symmetry && std::abs(comp - std::conj(u)) > 1e-8)
    throw SymmetryBroken("companion entry mismatch " +
                         std::to_string(std::abs(comp - std::conj(u))));
  return u;
}

ComplexField soliton_field(const std::vector<cplx>& poles,
                           const std::vector<RowVec2>& norming,
                           const std::vector<double>& xs, double t,
                           const SolitonOptions& opts) {
  std::vector<cplx> vals(xs.size());
  std::string failures;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    try {
      vals[i] = reconstruct(assemble_and_solve(poles, norming, xs[i], t, opts));
    } catch (const Error& e) {
      if (failures.size() < 256)
        failures += "[" + std::to_string(i) + "] " + e.what() + "; ";
      vals[i] = cplx(0, 0);
    }
  }
  if (!failures.empty()) throw Error("soliton_field failures: " + failures);
  ComplexField f;
  f.xs = xs;
  f.values = std::move(vals);
  f.time = t;
  f.validate();
  return f;
}

ComplexField soliton_field(const ScatteringData& sd,
                           const std::vector<double>& xs, double t,
                           const SolitonOptions& opts) {
  return soliton_field(sd.poles, sd.norming, xs, t, opts);
}

double band_coordinate(cplx k) {
  return 3.0 * k.real() * k.real() - k.imag() * k.imag();
}

FilteredData cone_filter(const ScatteringData& sd, const ConeSpec& cone,
                         double k0, double quad_tol) {
  if (!(cone.v2 <= cone.v1))
    throw Error("cone requires v2 <= v1");
  if (!cone.region1() && !cone.region2())
    throw Error("cone velocities must not straddle zero");
  const double lo = cone.band_lo(), hi = cone.band_hi();

  FilteredData out;
  const bool with_delta = cone.region1() && k0 > 0.0 && sd.has_gamma();
  GammaFn gamma;
  if (with_delta) gamma = [&sd](double k) { return sd.gamma_at(k); };

  for (std::size_t j = 0; j < sd.poles.size(); ++j) {
    const double bc = band_coordinate(sd.poles[j]);
    if (bc < lo || bc > hi) continue;
    RowVec2 c = sd.norming[j];
    if (with_delta) {
      const DeltaMatrixResult dm =
          delta_matrix_inverse(gamma, k0, sd.poles[j], quad_tol);
      out.approximate_delta = out.approximate_delta || dm.approximate;
      // exp[-(1/2pi i) Int log(1+|gamma|^2)/(zeta - k_j) dzeta] equals
      // 1/det delta(k_j) by the Plemelj formula.
      const auto integrand = [&](double xi) -> cplx {
        const RowVec2 g = gamma(xi);
        return std::log1p(std::norm(g(0)) + std::norm(g(1))) /
               (xi - sd.poles[j]);
      };
      const QuadResult q = integrate_gk_split(
          integrand, -k0, k0, {-0.5 * k0, 0.0, 0.5 * k0}, quad_tol);
      const cplx inv_det_delta = std::exp(-q.value / cplx(0.0, 2.0 * M_PI));
      c = (c * dm.delta_inv) * inv_det_delta;
    }
    out.poles.push_back(sd.poles[j]);
    out.norming.push_back(c);
  }
  return out;
}

double mu_of_cone(const ScatteringData& sd, const ConeSpec& cone) {
  const double lo = cone.band_lo(), hi = cone.band_hi();
  double mu = std::numeric_limits<double>::infinity();
  for (const cplx& k : sd.poles) {
    const double bc = band_coordinate(k);
    if (bc >= lo && bc <= hi) continue;
    const double dist = bc < lo ? lo - bc : bc - hi;
    mu = std::min(mu, k.imag() * dist);
  }
  return mu;
}

}  // namespace ssq
