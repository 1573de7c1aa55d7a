#pragma once

#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

#include "ruminlab/uea.hpp"

namespace rumin {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;

/// Scalar representation rho_alpha, alpha = (alpha(X_1), alpha(X_2)).
struct ScalarRep {
  double v = 0, w = 0;
};

/// Schroedinger representation rho_hbar on L^2(R).
struct SchroedingerRep {
  double hbar = 1;
};

/// Generic representation rho_{lambda,mu,nu} on L^2(R).
struct GenericRep {
  double lambda = 1, mu = 0, nu = 0;
};

using RepresentationSpec = std::variant<ScalarRep, SchroedingerRep, GenericRep>;

/// Throws std::invalid_argument if the spec violates its invariants
/// (hbar != 0; (lambda, mu) != (0,0)).
void validate_spec(const RepresentationSpec& spec);

/// Truncation: N interior Hermite modes plus a guard band of G extra modes
/// used during operator composition and trimmed afterwards.
struct TruncationConfig {
  int N = 400;
  int G = 24;
};

void validate_trunc(const TruncationConfig& t);

/// Ladder-basis matrices of theta and d/dtheta at dimension m:
/// a|n> = sqrt(n)|n-1>, theta = (a + a^H)/sqrt2, d_theta = (a - a^H)/sqrt2.
MatrixXcd theta_matrix(int m);
MatrixXcd dtheta_matrix(int m);

/// Matrices of the generators X_1..X_n in the representation, at dimension
/// N + G (or 1x1 for scalar representations).
std::vector<MatrixXcd> generator_matrices(const GradedLieAlgebra& L,
                                          const RepresentationSpec& spec,
                                          const TruncationConfig& trunc);

/// Evaluates a polynomial matrix in the representation: each PBW monomial
/// becomes the ordered product of generator matrices at dimension N + G; the
/// result is trimmed to the interior N x N blocks. Returns a
/// (rows*N) x (cols*N) block matrix.
MatrixXcd evaluate(const OpPolyMatrix& M, const RepresentationSpec& spec,
                   const TruncationConfig& trunc);

/// Same with explicit generator matrices (e.g. for rho o phi).
MatrixXcd evaluate_with_generators(const OpPolyMatrix& M,
                                   const std::vector<MatrixXcd>& gens, int block_out);

/// Interior block size of an evaluated matrix (N, or 1 for scalar reps).
int block_size(const RepresentationSpec& spec, const TruncationConfig& trunc);

/// sup-norm residual of evaluate(X3 X3 + 2 X1 X5 - 2 X2 X4) - nu * I on the
/// interior block; the generic representation's defining invariant.
double casimir_check(const GradedLieAlgebra& L, const GenericRep& rep,
                     const TruncationConfig& trunc);

}  // namespace rumin
