#pragma once

#include <string>
#include <vector>

#include "ruminlab/cohomology.hpp"
#include "ruminlab/uea.hpp"

namespace rumin {

/// The Rumin differentials D_0..D_{n-1} in the chosen cohomology bases:
/// five matrices for the (2,3,5) algebra, three for the Heisenberg algebra,
/// and the de Rham differentials for abelian algebras.
std::vector<OpPolyMatrix> rumin_differentials(const GradedLieAlgebra& L);

/// Report of an exact D_{q+1} D_q = 0 verification; failures list the
/// offending composition entries rather than throwing.
struct ComplexReport {
  bool ok = true;
  struct Residual {
    int q;           // composition D_{q+1} D_q
    int row, col;    // entry with nonzero residual
    std::string term;
  };
  std::vector<Residual> residuals;
};

ComplexReport verify_complex(const std::vector<OpPolyMatrix>& D);

/// Formal adjoint with respect to the graded Hermitian form h:
/// D_q^{*h} = h_q^{-1} D_q^* h_{q+1}. Requires exact (Q(sqrt2)) h matrices.
OpPolyMatrix adjoint_matrix(const std::vector<ExactMatrix>& h, const OpPolyMatrix& Dq, int q);

/// Exponents a_q with a_q k_q = kappa (smallest choice), and kappa itself.
std::vector<int> seshadri_exponents(const std::vector<int>& k, int* kappa_out);

/// Rumin-Seshadri operator
/// Delta_{h,q} = (D_{q-1} D_{q-1}^{*h})^{a_{q-1}} + (D_q^{*h} D_q)^{a_q}.
OpPolyMatrix rumin_seshadri(const GradedLieAlgebra& L, const std::vector<OpPolyMatrix>& D,
                            const std::vector<ExactMatrix>& h, const std::vector<int>& k,
                            int q);

/// Naturality of the Rumin complex under graded automorphisms: verifies
/// K_{q+1}(phi) (phi . D_q) K_q(phi)^{-1} = D_q exactly, where phi acts
/// entrywise on U(g) and K_q is the induced cohomology action.
struct NaturalityReport {
  bool ok = true;
  std::vector<int> failed_degrees;
};

NaturalityReport naturality_check(const GradedLieAlgebra& L, const CohomologyData& coh,
                                  const std::vector<OpPolyMatrix>& D,
                                  const GradedAutomorphism& phi);

}  // namespace rumin
