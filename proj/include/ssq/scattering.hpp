#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "ssq/field.hpp"

namespace ssq {

using Mat3 = Eigen::Matrix3cd;
using Mat2 = Eigen::Matrix2cd;
using RowVec2 = Eigen::Matrix<cplx, 1, 2>;
using ColVec2 = Eigen::Matrix<cplx, 2, 1>;

enum class JostDirection { from_minus_inf, from_plus_inf };

/// Potential sampler: u(x) for the 2-vector q = (u, u*)^T.
using Potential = std::function<cplx(double)>;

struct JostOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double h_min = 1e-12;
  long max_steps = 2'000'000;
  double edge_warn_threshold = 1e-10;
  double edge_fail_threshold = 1e-6;
};

/// Integrates the phase-conjugated Jost system
///   W' = (e^{ikx sigma^} U(x)) W,  W(start) = I,
/// across [xa, xb] (direction picks the start edge) and returns W at the far
/// edge. For the left-normalized solution this limit is the transition matrix.
Mat3 jost_integrate(const Potential& u, double xa, double xb, cplx k,
                    JostDirection dir, const JostOptions& opts = {});

/// Field overload; interpolates the sampled profile and checks edge decay.
Mat3 jost_integrate(const ComplexField& field, cplx k, JostDirection dir,
                    const JostOptions& opts = {});

struct TransitionData {
  std::vector<double> k_grid;
  std::vector<Mat2> a_samples;     // 2x2 upper-left blocks
  std::vector<RowVec2> b_samples;  // bottom row, first two entries
  std::vector<bool> ok;            // per-point success flags
  std::vector<std::size_t> failed_indices() const;

  /// Max residual of a(k) = sigma1 a*(-k*) sigma1 over the grid (needs a
  /// symmetric grid).
  double a_symmetry_residual() const;
  double b_symmetry_residual() const;
  /// Max |det S(k) - 1| over the grid.
  double det_s_residual(const Potential& u, double xa, double xb) const;
};

TransitionData compute_transition(const ComplexField& field,
                                  const std::vector<double>& k_grid,
                                  const JostOptions& opts = {});
TransitionData compute_transition(const Potential& u, double xa, double xb,
                                  const std::vector<double>& k_grid,
                                  const JostOptions& opts = {});

/// Full 3x3 transition matrix s(k) = lim_{x->+inf} e^{ikx sigma^} Psi_-(k;x).
Mat3 transition_matrix(const Potential& u, double xa, double xb, cplx k,
                       const JostOptions& opts = {});

/// det a(k) for complex k in the upper half-plane.
cplx det_a(const Potential& u, double xa, double xb, cplx k,
           const JostOptions& opts = {});

struct SearchBox {
  double re_min, re_max, im_min, im_max;
};

struct SpectrumOptions {
  int seed_re = 12;       // Newton seed lattice
  int seed_im = 8;
  double newton_tol = 1e-10;   // |det a| target at the root
  int newton_max_iter = 60;
  double fd_step = 1e-6;       // derivative step for Newton
  double dedupe_radius = 1e-6;
  double min_im = 1e-3;        // poles closer to R are rejected
  int winding_min_samples = 64;
  JostOptions jost;
};

/// All simple zeros of det a inside the box, counted by the argument
/// principle and refined by Newton. Throws RootCountMismatch / DegenerateZero.
std::vector<cplx> find_discrete_spectrum(const ComplexField& field,
                                         const SearchBox& box,
                                         const SpectrumOptions& opts = {});
std::vector<cplx> find_discrete_spectrum(const Potential& u, double xa,
                                         double xb, const SearchBox& box,
                                         const SpectrumOptions& opts = {});

/// Argument-principle winding count of det a around the box boundary.
int winding_count(const Potential& u, double xa, double xb,
                  const SearchBox& box, const SpectrumOptions& opts = {});

/// c_j = b(k_j) adj a(k_j) / (d/dk det a)(k_j); b evaluated by direct
/// integration at complex k (reliability checked against the profile decay).
std::vector<RowVec2> compute_norming_constants(const ComplexField& field,
                                               const std::vector<cplx>& poles,
                                               const JostOptions& opts = {});

/// Fitted exponential decay rate of |u| on the outer fraction of each tail
/// (log-linear least squares); returns min of the two sides.
double edge_decay_rate(const ComplexField& field, double outer_fraction = 0.1);

struct ScatteringData {
  std::vector<cplx> poles;
  std::vector<RowVec2> norming;
  std::vector<double> gamma_k;        // real grid
  std::vector<RowVec2> gamma_samples; // gamma(k) = b(k) a(k)^{-1}
  bool has_gamma() const { return !gamma_k.empty(); }
  RowVec2 gamma_at(double k) const;   // cubic interpolation, zero outside
};

/// gamma grid from transition data; flags points where det a ~ 0.
ScatteringData make_scattering_data(const TransitionData& td,
                                    const std::vector<cplx>& poles,
                                    const std::vector<RowVec2>& norming);

}  // namespace ssq
