#include "ruminlab/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace rumin {

namespace {

// B_{2k} for the asymptotic tails.
constexpr double kBern[] = {1.0 / 6,      -1.0 / 30,     1.0 / 42,      -1.0 / 30,
                            5.0 / 66,     -691.0 / 2730, 7.0 / 6,       -3617.0 / 510,
                            43867.0 / 798, -174611.0 / 330};

bool is_nonpositive_integer(double x) { return x <= 0 && x == std::floor(x); }

// Stirling series for x >= 12.
double lgamma_large(double x) {
  double s = (x - 0.5) * std::log(x) - x + 0.5 * kLog2Pi;
  double x2 = x * x, pw = x;
  for (int k = 0; k < 10; ++k) {
    s += kBern[k] / ((2 * k + 2) * (2 * k + 1) * pw);
    pw *= x2;
  }
  return s;
}

}  // namespace

SignedLogGamma lgamma_signed(double x) {
  if (is_nonpositive_integer(x)) throw std::domain_error("lgamma_signed: pole");
  if (x >= 12) return {lgamma_large(x), 1};
  if (x > 0) {
    // Shift up: Gamma(x) = Gamma(x+k) / (x (x+1) ... (x+k-1)).
    double shift = 0;
    double y = x;
    while (y < 12) {
      shift += std::log(y);
      y += 1;
    }
    return {lgamma_large(y) - shift, 1};
  }
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x), sign from sin(pi x).
  double sp = std::sin(M_PI * x);
  SignedLogGamma right = lgamma_signed(1 - x);
  double log_abs = std::log(M_PI) - std::log(std::abs(sp)) - right.log_abs;
  return {log_abs, sp > 0 ? 1 : -1};
}

double digamma(double x) {
  if (is_nonpositive_integer(x)) throw std::domain_error("digamma: pole");
  if (x < 0) {
    // psi(x) = psi(1-x) - pi cot(pi x)
    return digamma(1 - x) - M_PI / std::tan(M_PI * x);
  }
  double acc = 0;
  while (x < 12) {
    acc -= 1 / x;
    x += 1;
  }
  double s = std::log(x) - 0.5 / x;
  double x2 = x * x, pw = x2;
  for (int k = 0; k < 10; ++k) {
    s -= kBern[k] / ((2 * k + 2) * pw);
    pw *= x2;
  }
  return acc + s;
}

double hurwitz_zeta(double s, double a) {
  if (s == 1) throw std::domain_error("hurwitz_zeta: pole at s=1");
  if (a <= 0) throw std::domain_error("hurwitz_zeta: a must be positive");
  // Euler-Maclaurin with shift-up: sum the first M terms directly, then
  // integral + boundary + Bernoulli tail at a+M.
  int M = 0;
  while (a + M < 16) ++M;
  M += 8;
  double sum = 0;
  for (int n = 0; n < M; ++n) sum += std::pow(a + n, -s);
  double z = a + M;
  sum += std::pow(z, 1 - s) / (s - 1);
  sum += 0.5 * std::pow(z, -s);
  // Tail: sum_k B_{2k}/(2k)! * (s)_{2k-1} * z^{-s-2k+1}
  double poch = s;                     // (s)_1
  double fact = 2;                     // (2k)! running
  double zp = std::pow(z, -s - 1);
  for (int k = 1; k <= 10; ++k) {
    sum += kBern[k - 1] / fact * poch * zp;
    // Update for next k: multiply Pochhammer by (s+2k-1)(s+2k), factorial by
    // (2k+1)(2k+2), power by z^-2.
    poch *= (s + 2 * k - 1) * (s + 2 * k);
    fact *= (2 * k + 1) * (2 * k + 2);
    zp /= z * z;
  }
  return sum;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

}  // namespace rumin
