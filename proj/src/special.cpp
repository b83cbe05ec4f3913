#include "ssq/special.hpp"

#include <cmath>

namespace ssq {
namespace {

// Lanczos, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

std::complex<double> gamma_positive_half(std::complex<double> z) {
  // valid for Re z >= 0.5
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + kLanczosG + 0.5;
  const double sqrt2pi = 2.5066282746310005024;
  return sqrt2pi * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

constexpr long double kPiL = 3.14159265358979323846264338327950288L;
const long double kSqrtPiL = std::sqrt(kPiL);

// Series/asymptotic crossover points chosen so both sides stay below 1e-12
// absolute error (series cancellation vs optimally truncated remainder).
constexpr double kAiryCutLo = -7.5;
constexpr double kAiryCutHi = 6.0;

// Maclaurin: Ai = c1*f - c2*g with f = 1 + y^3/(2*3) + ..., g = y + y^4/(3*4) + ...
void airy_series(long double y, long double& ai, long double& aip) {
  const long double c1 = 0.35502805388781723926006318600418L;  // Ai(0)
  const long double c2 = 0.25881940379280679840518356018920L;  // -Ai'(0)
  const long double y3 = y * y * y;
  long double tf = 1.0L, tg = y;        // value terms: y^{3k}, y^{3k+1}
  long double tfp = 0.0L, tgp = 1.0L;   // derivative terms: y^{3k-1}, y^{3k}
  long double f = tf, g = tg, fp = tfp, gp = tgp;
  long double y2 = y * y;
  long double tfp_base = y2 / 2.0L;  // k=1 derivative term of f: y^2/2
  long double tgp_base = y3 / 3.0L;  // k=1 derivative term of g: y^3/3
  fp += tfp_base;
  gp += tgp_base;
  for (int k = 1; k < 200; ++k) {
    const long double k3 = 3.0L * static_cast<long double>(k);
    tf *= y3 / (k3 * (k3 - 1.0L));
    tg *= y3 / (k3 * (k3 + 1.0L));
    f += tf;
    g += tg;
    if (k >= 1) {
      // next derivative terms (for order k+1): d/dy y^{3k}/... chains
      tfp_base *= y3 / ((k3 + 2.0L) * k3);
      tgp_base *= y3 / ((k3 + 3.0L) * (k3 + 1.0L));
      fp += tfp_base;
      gp += tgp_base;
    }
    if (std::fabs(static_cast<double>(tf)) < 1e-30 &&
        std::fabs(static_cast<double>(tg)) < 1e-30)
      break;
  }
  ai = c1 * f - c2 * g;
  aip = c1 * fp - c2 * gp;
}

// DLMF 9.7: u_{k+1} = u_k (6k+5)(6k+1) / (72(k+1)), v_k = (6k+1)/(1-6k) u_k.
void airy_asymptotic_pos(long double y, long double& ai, long double& aip) {
  const long double zeta = 2.0L / 3.0L * y * std::sqrt(y);
  long double u = 1.0L;
  long double zk = 1.0L;
  long double s = 1.0L, sp = 1.0L;
  long double last = 1.0L;
  for (int k = 0; k < 80; ++k) {
    const long double kk = static_cast<long double>(k);
    u *= (6.0L * kk + 5.0L) * (6.0L * kk + 1.0L) / (72.0L * (kk + 1.0L));
    zk /= -zeta;
    const long double term = u * zk;  // (-1)^{k+1} u_{k+1} zeta^{-(k+1)}
    if (std::fabs(static_cast<double>(term)) >
        std::fabs(static_cast<double>(last)))
      break;  // optimal truncation reached
    last = term;
    const long double k1 = kk + 1.0L;
    const long double v = (6.0L * k1 + 1.0L) / (1.0L - 6.0L * k1) * u;
    s += term;
    sp += v * zk;
    if (std::fabs(static_cast<double>(term)) < 1e-25) break;
  }
  const long double e = std::exp(-zeta);
  ai = e / (2.0L * kSqrtPiL * std::pow(y, 0.25L)) * s;
  aip = -std::pow(y, 0.25L) * e / (2.0L * kSqrtPiL) * sp;
}

// Oscillatory side, z = -y > 0 (DLMF 9.7.9 / 9.7.10).
void airy_asymptotic_neg(long double z, long double& ai, long double& aip) {
  const long double zeta = 2.0L / 3.0L * z * std::sqrt(z);
  long double u = 1.0L;           // u_k
  long double zk = 1.0L;          // zeta^{-k}
  long double P = 1.0L, Q = 0.0L; // value series
  long double Pp = 1.0L, Qp = 0.0L;
  long double lastmag = 1e30L;
  for (int k = 1; k <= 80; ++k) {
    const long double kk = static_cast<long double>(k - 1);
    u *= (6.0L * kk + 5.0L) * (6.0L * kk + 1.0L) / (72.0L * (kk + 1.0L));
    zk /= zeta;
    const long double w = u * zk;
    if (std::fabs(static_cast<double>(w)) > lastmag) break;
    lastmag = std::fabs(static_cast<double>(w));
    const long double v =
        (6.0L * static_cast<long double>(k) + 1.0L) /
        (1.0L - 6.0L * static_cast<long double>(k)) * u;
    const long double wp = v * zk;
    if (k % 2 == 0) {
      const long double sgn = (k / 2) % 2 == 0 ? 1.0L : -1.0L;
      P += sgn * w;
      Pp += sgn * wp;
    } else {
      const long double sgn = ((k - 1) / 2) % 2 == 0 ? 1.0L : -1.0L;
      Q += sgn * w;
      Qp += sgn * wp;
    }
    if (lastmag < 1e-25) break;
  }
  const long double phi = zeta - kPiL / 4.0L;
  const long double cp = std::cos(phi), sn = std::sin(phi);
  ai = (cp * P + sn * Q) / (kSqrtPiL * std::pow(z, 0.25L));
  aip = std::pow(z, 0.25L) / kSqrtPiL * (sn * Pp - cp * Qp);
}

void airy_pair(double y, long double& ai, long double& aip) {
  if (y >= kAiryCutHi)
    airy_asymptotic_pos(static_cast<long double>(y), ai, aip);
  else if (y <= kAiryCutLo)
    airy_asymptotic_neg(-static_cast<long double>(y), ai, aip);
  else
    airy_series(static_cast<long double>(y), ai, aip);
}

}  // namespace

std::complex<double> gamma_complex(std::complex<double> z) {
  if (z.real() < 0.5) {
    const std::complex<double> pi(M_PI, 0.0);
    return pi / (std::sin(pi * z) * gamma_positive_half(1.0 - z));
  }
  return gamma_positive_half(z);
}

double airy_ai(double y) {
  long double ai, aip;
  airy_pair(y, ai, aip);
  return static_cast<double>(ai);
}

double airy_ai_prime(double y) {
  long double ai, aip;
  airy_pair(y, ai, aip);
  return static_cast<double>(aip);
}

}  // namespace ssq
