#pragma once

namespace rumin {

inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024;
inline constexpr double kLog2Pi = 1.8378770664093454835606594728112353;

/// log |Gamma(x)| with the sign of Gamma(x); poles at nonpositive integers
/// throw. Euler-Maclaurin/Stirling tail with shift-up recursion, reflection
/// for x < 0 with explicit sign tracking.
struct SignedLogGamma {
  double log_abs = 0;
  int sign = 1;
};
SignedLogGamma lgamma_signed(double x);

/// Digamma, same strategy.
double digamma(double x);

/// Hurwitz zeta for real s != 1, a > 0, by Euler-Maclaurin; ~1e-12 absolute.
double hurwitz_zeta(double s, double a);

/// Riemann zeta for real s != 1.
double riemann_zeta(double s);

}  // namespace rumin
