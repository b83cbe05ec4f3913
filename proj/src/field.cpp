#include "ssq/field.hpp"

#include <cmath>
#include <cstdlib>

#include "ssq/errors.hpp"

namespace ssq {

ComplexField::ComplexField(std::vector<double> xs_, std::vector<cplx> values_,
                           double t)
    : xs(std::move(xs_)), values(std::move(values_)), time(t) {
  validate();
}

double ComplexField::dx() const {
  if (xs.size() < 2) throw Error("field grid needs at least two points");
  return xs[1] - xs[0];
}

void ComplexField::validate() const {
  if (xs.size() != values.size())
    throw Error("field grid/value length mismatch");
  if (xs.size() < 2) throw Error("field grid needs at least two points");
  const double h = xs[1] - xs[0];
  if (!(h > 0)) throw Error("field grid must be increasing");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double hi = xs[i] - xs[i - 1];
    if (std::abs(hi - h) > 1e-12 * std::max(1.0, std::abs(h)))
      throw Error("field grid spacing not uniform to 1e-12");
  }
  for (const cplx& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error("field contains non-finite values");
  }
}

cplx ComplexField::at(double x) const {
  const std::size_t n = xs.size();
  const double h = xs[1] - xs[0];
  if (x <= xs.front() || x >= xs.back()) {
    if (x == xs.front()) return values.front();
    if (x == xs.back()) return values.back();
    return cplx(0.0, 0.0);
  }
  // 4-point Lagrange on the cell containing x.
  double s = (x - xs.front()) / h;
  long j = static_cast<long>(std::floor(s));
  long i0 = j - 1;
  if (i0 < 0) i0 = 0;
  if (i0 + 3 >= static_cast<long>(n)) i0 = static_cast<long>(n) - 4;
  const double t = (x - xs[static_cast<std::size_t>(i0)]) / h;
  const double t1 = t - 1.0, t2 = t - 2.0, t3 = t - 3.0;
  const double w0 = -t1 * t2 * t3 / 6.0;
  const double w1 = t * t2 * t3 / 2.0;
  const double w2 = -t * t1 * t3 / 2.0;
  const double w3 = t * t1 * t2 / 6.0;
  const auto* v = values.data() + i0;
  return w0 * v[0] + w1 * v[1] + w2 * v[2] + w3 * v[3];
}

ComplexField make_uniform_field(double xmin, double xmax, std::size_t n,
                                const std::vector<cplx>& values, double t) {
  std::vector<double> xs(n);
  const double h = (xmax - xmin) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = xmin + h * static_cast<double>(i);
  return ComplexField(std::move(xs), values, t);
}

double l2_norm_squared(const ComplexField& f) {
  const double h = f.dx();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    s += w * std::norm(f.values[i]);
  }
  return s * h;
}

double linf_diff(const ComplexField& f, const ComplexField& g) {
  if (f.size() != g.size()) throw GridMismatch("field sizes differ");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f.xs[i] - g.xs[i]) > 1e-9)
      throw GridMismatch("field grids differ");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    m = std::max(m, std::abs(f.values[i] - g.values[i]));
  return m;
}

}  // namespace ssq
