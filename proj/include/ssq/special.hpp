#pragma once

#include <complex>

namespace ssq {

/// Gamma function for complex argument (Lanczos approximation, ~1e-14
/// relative away from poles; reflection formula for Re z < 0.5).
std::complex<double> gamma_complex(std::complex<double> z);

/// Airy function Ai(y). Maclaurin series on (-7.5, 6) evaluated in extended
/// precision, asymptotic expansions outside; absolute error below 1e-12.
double airy_ai(double y);

/// Derivative Ai'(y), same evaluation strategy.
double airy_ai_prime(double y);

}  // namespace ssq
