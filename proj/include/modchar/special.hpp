#pragma once

#include <complex>

namespace modchar {

/// B_{2j}/(2j)! for j >= 1.
double bernoulli_ratio(int j);

/// log Γ(x) for x > 0 (shift to x >= 15, then Stirling).
double log_gamma(double x);
/// Γ(z) via shift + Stirling, with reflection for Re z < 1/2.
std::complex<double> gamma(std::complex<double> z);
/// ψ(x) for x > 0.
double digamma(double x);

struct HurwitzResult {
  std::complex<double> value;
  double error_bound = 0.0;
  int shift = 0;  // M
  int depth = 0;  // number of Bernoulli terms
};

/// ζ(s, a) for a in (0, 1] by Euler-Maclaurin:
///   Σ_{n<M} (n+a)^{-s} + (M+a)^{1-s}/(s-1) + (M+a)^{-s}/2
///   + Σ_{j<=B} B_{2j}/(2j)! (s)_{2j-1} (M+a)^{-s-2j+1}.
/// M and B grow until the remainder bound is below `tolerance`.
HurwitzResult hurwitz_zeta(std::complex<double> s, double a, double tolerance = 1e-14);

}  // namespace modchar
