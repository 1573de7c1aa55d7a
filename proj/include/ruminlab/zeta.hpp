#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ruminlab/cohomology.hpp"
#include "ruminlab/reps.hpp"
#include "ruminlab/spectral.hpp"

namespace rumin {

/// Spectrum of the form { C * prod_i (n + b_i) : n >= n0 } with a finite set
/// of exceptional eigenvalues adjoined; every listed eigenvalue must be
/// positive.
struct FactoredSpectrum {
  double scale = 1;                 // C
  std::vector<double> shifts;      // b_1..b_m
  int start_index = 1;              // n0
  std::vector<double> exceptional;  // extra positive eigenvalues
  int multiplicity = 1;             // global multiplicity applied to zeta
};

/// (zeta(0), zeta'(0), log det) of a positive spectrum.
struct ZetaValue {
  double zeta0 = 0;
  double zeta_prime0 = 0;
  double log_det = 0;  // -zeta'(0)
  enum class Method { kClosedForm, kSeries, kNumericMellin } method = Method::kClosedForm;
};

/// Closed-form regularized determinant of a factored spectrum via the
/// Weierstrass product: zeta(0) = -1/2 - (sum b)/m and
/// log det = zeta(0) log C + (m/2) log 2pi - sum_i log Gamma(1+b_i),
/// with exceptional eigenvalues contributing +1 to zeta(0) and +log mu to
/// log det. When `validate` is set, the independent series continuation
/// (regdet_factored_series) must agree to 1e-10, else std::logic_error.
ZetaValue regdet_factored(const FactoredSpectrum& fs, bool validate = true);

/// Independent continuation oracle: truncated series plus Hurwitz-type tail
/// resummation; shares no code path with the closed form above.
ZetaValue regdet_factored_series(const FactoredSpectrum& fs);

/// Determinants and torsion of the Rumin complex across degrees.
struct DeterminantTable {
  std::vector<double> det;   // det|D_q|, q = 0..n-1
  double torsion = 1;        // alternating product
  bool torsion_exact = false;  // true when tau was obtained by exact log cancellation
};

/// Schroedinger representation on the (2,3,5) algebra, metric-induced h with
/// b_g proportional to g (normal form: b11 == b22). Values are
/// hbar-independent; the hypothesis is enforced.
DeterminantTable schroedinger_dets(double hbar, const Rational& a, const Rational& b11,
                                   const Rational& b22);

/// Scalar representation, any graded metric.
DeterminantTable scalar_dets(double v, double w, const GradedMetric& g);

/// Exact (squared) scalar determinants for rational alpha and metric:
/// returns {det^2|D_q|} and tau as exact rationals.
struct ScalarDetsExact {
  std::vector<Rational> det_sq;
  Rational torsion;
};
ScalarDetsExact scalar_dets_exact(const Rational& v, const Rational& w,
                                  const GradedMetric& g);

/// Heisenberg algebra determinants.
DeterminantTable heisenberg_dets_scalar(double v, double w, const GradedMetric& g);
DeterminantTable heisenberg_dets_schroedinger(double hbar, const GradedMetric& g);

/// Abelian R^n: det|D_q| = |alpha|^binom(n-1, q); tau = |alpha| for n = 1,
/// else 1. Computed in logs.
DeterminantTable abelian_dets(int n, double alpha_norm);

/// Diagnostics of the numeric zeta'(0) evaluation.
struct MellinDiagnostics {
  double fit_condition = 0;       // SVD condition number of the fit
  double constant_coeff = 0;      // fitted t^0 coefficient (should be ~0)
  double jackknife_error = 0;     // spread over fit subwindows
  double t_min = 0, t_split = 0;  // integration split points
  double small_t_residual = 0;    // |Theta - fit| at t_min (extrapolation bound)
  bool flagged = false;           // ill-conditioned or inconsistent fit
  std::string note;
};

struct NumericZetaOptions {
  double exponent_cap = 1.6;   // include ladder exponents p <= cap
  double window_decades = 2.0; // fit window width in decades
  bool pin_constant = true;    // constrain the t^0 coefficient to zero
  double split_t = -1;         // Mellin split point; auto if negative
};

/// Numeric zeta'(0) for a positive spectrum with known small-t exponent
/// ladder: fits the singular expansion on a log grid, subtracts it on
/// (0, t_split], and integrates directly on [t_split, infinity).
ZetaValue numeric_zeta_prime0(const std::vector<double>& eigenvalues,
                              const std::vector<double>& sing_exponents,
                              const NumericZetaOptions& opts, MellinDiagnostics* diag);

/// Exponent ladders of the small-time heat trace.
/// Generic representation, operator D_q^{*h} D_q: (2j-3)/(4 k_q), j >= 0.
std::vector<double> generic_dstard_exponents(int k_q, double cap);
/// Generic representation, Rumin-Seshadri operator: (j-3)/(4 kappa), even j.
std::vector<double> generic_delta_exponents(int kappa, double cap);
/// Schroedinger representation, homogeneous operator of order 2 kappa_eff:
/// (j-1)/kappa_eff, j >= 0.
std::vector<double> schroedinger_exponents(int kappa_eff, double cap);

/// Analytic torsion.
enum class TorsionMode { kClosedForm, kNumeric };

struct TorsionResult {
  double tau = 1;
  double log_tau = 0;
  bool exact = false;
  std::vector<double> delta_zeta_prime;   // zeta'_{Delta_{h,q}}(0) per degree (numeric)
  std::vector<MellinDiagnostics> diag;     // per degree (numeric mode)
};

/// Torsion of the Rumin complex on the (2,3,5) algebra for a metric-induced
/// h given in normal form. Closed-form mode dispatches to the theorem
/// evaluators; numeric mode runs the spectral + Mellin pipeline (using
/// Poincare duality to halve the work).
TorsionResult torsion(const RepresentationSpec& spec, const GradedMetric& g,
                      TorsionMode mode, const TruncationConfig& trunc = {400, 24});

/// Numeric zeta'(0) of Delta_{h,q} in a representation (spectrum assembled
/// from the trusted D-spectra via the Hodge decomposition).
ZetaValue delta_zeta_prime0(const RepresentationSpec& spec, const GradedMetric& g, int q,
                            const TruncationConfig& trunc, MellinDiagnostics* diag);

/// Closed-form zeta'_{Delta_{h,q}}(0) for the Schroedinger representation
/// with standard metric.
double delta_zeta_prime0_schroedinger_closed(double hbar, int q);

/// Verifies zeta_{Delta_{h,q}}(s/2) = zeta_{|D_{q-1}|}(a_{q-1} s)
///                                  + zeta_{|D_q|}(a_q s)
/// by direct convergent series (Schroedinger closed-form spectra), at the
/// given sample points Re s large. Returns the max discrepancy.
double zeta_recursion_check(double hbar, int q, const std::vector<double>& sample_s);

}  // namespace rumin
