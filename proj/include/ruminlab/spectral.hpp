#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ruminlab/cohomology.hpp"
#include "ruminlab/reps.hpp"
#include "ruminlab/rumin_ops.hpp"

namespace rumin {

using MatrixXd = Eigen::MatrixXd;
using VectorXd = Eigen::VectorXd;

/// Sorted spectrum of an evaluated, interior-trimmed Laplacian.
struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending, full trimmed operator
  int kernel_count = 0;             // trusted eigenvalues below threshold
  int trust_count = 0;              // number of trusted eigenvalues
  double kernel_threshold = 0;
  TruncationConfig trunc;
  double convergence_estimate = -1;  // max relative shift under N -> 2N; -1 if skipped

  /// Trusted nonzero eigenvalues (ascending).
  std::vector<double> nonzero() const;
};

/// Converts exact Hermitian forms to dense double matrices.
std::vector<MatrixXd> numeric_h(const std::vector<ExactMatrix>& h);

/// Kernel dimensions of D_q^{*h} D_q per degree, assuming the evaluated
/// complex is exact with injective D_0 (Rockland exactness in nontrivial
/// infinite-dimensional representations; also holds blockwise for the finite
/// scalar complexes). block_dims are the cohomology dimensions.
std::vector<int> exact_kernel_dims(const std::vector<int>& block_dims, int N);

/// Kernel dimensions of the other composition D_q D_q^{*h} per degree.
std::vector<int> exact_cokernel_dims(const std::vector<int>& block_dims, int N);

/// Spectrum of D_q^{*h} D_q in the representation. The Laplacian is formed
/// symbolically (D_q^* h_{q+1} D_q in the enveloping algebra, exact h) and
/// evaluated once, so the trimmed matrix is the exact compression
/// P_N (D^{*h} D) P_N; it is then symmetrized by the Cholesky factor of h_q
/// and eigensolved. Trust is tightened by a half-truncation verification
/// solve. expected_kernel (when >= 0) anchors the kernel threshold at the
/// spectral gap below the first true eigenvalue.
SpectrumResult laplacian_spectrum(const OpPolyMatrix& Dq, const RepresentationSpec& spec,
                                  const std::vector<ExactMatrix>& h, int q,
                                  const TruncationConfig& trunc,
                                  bool with_convergence = false, int expected_kernel = -1);

/// Spectrum of the other composition D_q D_q^{*h} (acting in degree q+1).
SpectrumResult colaplacian_spectrum(const OpPolyMatrix& Dq, const RepresentationSpec& spec,
                                    const std::vector<ExactMatrix>& h, int q,
                                    const TruncationConfig& trunc, int expected_kernel = -1);

/// Nonzero spectra of D_q^{*h} D_q for q = 0..max_q via the Rumin-Seshadri
/// chain: Delta_{h,q} is injective in nontrivial representations, its
/// compression has no kernel artifacts, and by the Hodge decomposition
/// spec(Delta_{h,q}) = {lam^{a_{q-1}}} u {lam^{a_q}} over the neighboring
/// nonzero D-spectra, so each degree is peeled from the previous one.
/// Results carry only nonzero eigenvalues (kernel_count = 0).
std::vector<SpectrumResult> complex_spectra(const GradedLieAlgebra& L,
                                            const std::vector<OpPolyMatrix>& D,
                                            const std::vector<ExactMatrix>& h,
                                            const std::vector<int>& k,
                                            const RepresentationSpec& spec,
                                            const TruncationConfig& trunc, int max_q = -1);

/// Dual chain from the top: nonzero spectra of D_q D_q^{*h} peeled downward
/// from the injective D_{n-1} D_{n-1}^{*h}; index q runs n-1 down to min_q.
std::vector<SpectrumResult> complex_spectra_dual(const GradedLieAlgebra& L,
                                                 const std::vector<OpPolyMatrix>& D,
                                                 const std::vector<ExactMatrix>& h,
                                                 const std::vector<int>& k,
                                                 const RepresentationSpec& spec,
                                                 const TruncationConfig& trunc,
                                                 int min_q = 0);

/// Closed-form nonzero spectrum of D_q^{*h} D_q for the Schroedinger
/// representation with standard metric (a=1, b=I), ascending, first `count`
/// eigenvalues; degrees 3, 4 via Poincare duality. Throws for generic
/// representations (no closed form).
std::vector<double> closed_form_spectrum(const GradedLieAlgebra& L,
                                         const RepresentationSpec& spec, int q, int count);

/// Auxiliary operators of the Schroedinger analysis.
struct AuxiliaryOperators {
  MatrixXcd A;      // Hermitian 2x2 block operator
  MatrixXcd G;      // skew-adjoint 2x2 block operator
  ExactMatrix J;    // constant symplectic matrix
  ExactMatrix star; // constant involution on H^2-like triples
  std::vector<double> spec_A2_nonzero;  // ascending nonzero spectrum of A^2 (trusted)
  std::vector<double> spec_G_imag;      // spectrum of G / i, ascending (trusted)
};

AuxiliaryOperators auxiliary_operators(double hbar, const TruncationConfig& trunc);

/// Max relative discrepancy between the trusted nonzero spectra of
/// D_q^{*h} D_q and D_{4-q} D_{4-q}^{*h}.
double poincare_check(const std::vector<OpPolyMatrix>& D, const RepresentationSpec& spec,
                      const std::vector<ExactMatrix>& h, int q, const TruncationConfig& trunc);

/// Max relative difference of two ascending spectra over their common
/// trusted window (compared pairwise from the bottom).
double compare_spectra(const std::vector<double>& a, const std::vector<double>& b,
                       int count);

}  // namespace rumin
