#include "ssq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ssq {
namespace {

// Kronrod-15 abscissae on [0,1] side (symmetric) and weights; Gauss-7 weights
// sit on the odd Kronrod nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Local {
  std::complex<double> k15;
  double err;
};

Local gk15(const std::function<std::complex<double>(double)>& f, double a,
           double b, int& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::complex<double> fc = f(c);
  evals += 15;
  std::complex<double> resg = fc * kWg[3];
  std::complex<double> resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const std::complex<double> f1 = f(c - dx);
    const std::complex<double> f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  resk *= h;
  resg *= h;
  return {resk, std::abs(resk - resg)};
}

void adapt(const std::function<std::complex<double>(double)>& f, double a,
           double b, double tol, int depth, int max_depth, QuadResult& out) {
  Local loc = gk15(f, a, b, out.evaluations);
  if (loc.err <= tol || depth >= max_depth) {
    out.value += loc.k15;
    out.error_estimate += loc.err;
    if (loc.err > tol) out.converged = false;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadResult integrate_gk(const std::function<std::complex<double>(double)>& f,
                        double a, double b, double abs_tol, int max_depth) {
  QuadResult out;
  if (a == b) return out;
  adapt(f, a, b, abs_tol, 0, max_depth, out);
  return out;
}

QuadResult integrate_gk_split(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const std::vector<double>& breakpoints, double abs_tol, int max_depth) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double p : breakpoints)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  QuadResult out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    QuadResult piece = integrate_gk(f, pts[i], pts[i + 1],
                                    abs_tol / static_cast<double>(pts.size()),
                                    max_depth);
    out.value += piece.value;
    out.error_estimate += piece.error_estimate;
    out.evaluations += piece.evaluations;
    out.converged = out.converged && piece.converged;
  }
  return out;
}

}  // namespace ssq
