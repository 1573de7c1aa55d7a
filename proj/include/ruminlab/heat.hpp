#pragma once

#include <vector>

#include "ruminlab/zeta.hpp"

namespace rumin {

/// Heat trace Theta(t) = sum exp(-lambda t) on a log grid, with per-point
/// tail-coverage bounds.
struct HeatTraceSeries {
  std::vector<double> t;
  std::vector<double> trace;
  std::vector<double> tail_bound;  // untrusted-tail proxy per point
};

/// Smallest t at which the truncated spectrum covers the trace to the given
/// relative tolerance.
double coverage_tmin(const std::vector<double>& eigenvalues, double rel_tol = 1e-14);

/// Evaluates the heat trace; refuses t below the coverage limit.
HeatTraceSeries heat_trace(const std::vector<double>& eigenvalues,
                           const std::vector<double>& t_grid);

/// Log-log regression slope of the trace over the smallest usable decade,
/// with a jackknife error bar (split-window spread).
struct ExponentFit {
  double slope = 0;
  double error = 0;
};

ExponentFit leading_exponent(const HeatTraceSeries& series);

/// Convenience: build the grid over [coverage_tmin, coverage_tmin * 10] and
/// fit the slope.
ExponentFit leading_exponent_of(const std::vector<double>& eigenvalues,
                                int points_per_decade = 60);

/// The r -> 0 degeneration of generic representations rho_{r lambda, r mu, nu}
/// with nu < 0: numeric zeta'(0) of the Rumin-Seshadri operator Delta_{h,0}
/// per r, an extrapolated constant term, and the Schroedinger pair reference.
struct DegenerationRow {
  double r = 0;
  double zeta_prime0 = 0;
  MellinDiagnostics diag;
};

struct DegenerationResult {
  std::vector<DegenerationRow> rows;
  double extrapolated_constant = 0;   // z_1 in the r-expansion
  double schroedinger_pair = 0;       // zeta' for rho_{+hbar} plus rho_{-hbar}
  double discrepancy = 0;             // |extrapolated - pair|
  double fit_residual = 0;            // extrapolation fit residual
};

DegenerationResult degeneration_experiment(double lambda, double mu, double nu,
                                           const std::vector<double>& r_list,
                                           const GradedMetric& g, int q,
                                           const TruncationConfig& trunc);

}  // namespace rumin
