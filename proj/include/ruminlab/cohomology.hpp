#pragma once

#include <optional>
#include <vector>

#include "ruminlab/exact.hpp"
#include "ruminlab/lie_algebra.hpp"

namespace rumin {

/// Basis bookkeeping for Lambda^q g*: sorted index subsets in lexicographic
/// order, plus wedge-multiplication with sign.
class ExteriorBasis {
 public:
  ExteriorBasis(int n, int q);

  int dim() const { return static_cast<int>(subsets_.size()); }
  const std::vector<int>& subset(int i) const { return subsets_[i]; }
  int index_of(const std::vector<int>& sorted_subset) const;

  /// Sign and target index of chi^j wedge chi^{subset}; nullopt if j occurs.
  static std::optional<std::pair<int, std::vector<int>>> wedge(int j,
                                                               const std::vector<int>& subset);

 private:
  std::vector<std::vector<int>> subsets_;
};

/// Matrix of the Chevalley-Eilenberg differential
/// partial_q : Lambda^q g* -> Lambda^{q+1} g* in the standard wedge bases.
ExactMatrix chevalley_eilenberg(const GradedLieAlgebra& L, int q);

/// Betti numbers dim H^q computed as nullity(partial_q) - rank(partial_{q-1}).
std::vector<int> betti_numbers(const GradedLieAlgebra& L);

/// Graded Euclidean inner product on g, stored as the full dim x dim Gram
/// matrix in the X basis; must be block diagonal with respect to the grading
/// and positive definite.
class GradedMetric {
 public:
  GradedMetric(const GradedLieAlgebra& L, ExactMatrix gram);

  /// The normal-form metric diag(1, 1, a, a*b11, a*b22) on the (2,3,5)
  /// algebra (b11, b22 are the entries of b_g; their inverses appear in the
  /// Hermitian forms). For the Heisenberg algebra: diag(1, 1, a).
  static GradedMetric normal_form(const GradedLieAlgebra& L, const Rational& a,
                                  const Rational& b11, const Rational& b22);
  static GradedMetric standard(const GradedLieAlgebra& L);

  const GradedLieAlgebra& algebra() const { return *alg_; }
  const ExactMatrix& gram() const { return gram_; }
  const ExactMatrix& gram_inverse() const { return gram_inv_; }

  bool is_normal_form() const;

  /// Gram matrix of the induced inner product on Lambda^q g* (minors of the
  /// inverse metric).
  ExactMatrix lambda_gram(int q) const;

 private:
  const GradedLieAlgebra* alg_;
  ExactMatrix gram_, gram_inv_;
};

struct MetricInvariants {
  Rational a;      // a_g
  ExactMatrix b;   // b_g as 2x2 rational Gram matrix on g_{-1}
};

/// Computes (a_g, b_g) from the defining identities and verifies them
/// identically (on a spanning set of arguments).
MetricInvariants metric_invariants(const GradedMetric& g);

/// Natural left action of a graded automorphism on a metric:
/// (phi . g)(X, Y) = g(phi^{-1} X, phi^{-1} Y).
GradedMetric metric_action(const GradedAutomorphism& phi, const GradedMetric& g);

/// Cohomology bases pinned to the paper's tables, with the q=3 middle form
/// adapted to the metric when b11 != b22. Forms are columns over the
/// Lambda^q wedge basis.
struct CohomologyData {
  std::vector<int> betti;            // dim H^q
  std::vector<int> N;                // grading weights N_q of H^q
  std::vector<int> k;                // homogeneity orders k_q = N_{q+1} - N_q
  std::vector<ExactMatrix> basis;    // harmonic/chosen basis of H^q
  std::vector<ExactMatrix> im_span;  // spanning set of im partial_{q-1}
};

/// The chosen cohomology bases for the given algebra and metric; asserts
/// closedness and completeness of each listed form.
CohomologyData harmonic_basis(const GradedLieAlgebra& L, const GradedMetric& g);

/// Hermitian forms h_{g,q} on the chosen bases, plus Hodge star data.
struct HermitianComplexForms {
  std::vector<ExactMatrix> h;          // exact h_{g,q} (real symmetric PD)
  std::vector<std::vector<std::vector<double>>> star;  // star_{g,q}: H^q -> H^{n-q}
  bool star_exact = false;             // true when the stars are exact (a=1, b=I)
};

/// Computes h_{g,q} exactly as Gram matrices of harmonic representatives,
/// and the Hodge stars (floating point; exact only for the standard metric).
HermitianComplexForms hermitian_forms(const GradedLieAlgebra& L, const GradedMetric& g);

/// Closed-form h_{g,q} for normal-form metrics on the (2,3,5) algebra.
std::vector<ExactMatrix> hq_closed_form(const Rational& a, const Rational& b11,
                                        const Rational& b22);

/// Hodge star matrices for normal-form metrics (doubles).
std::vector<std::vector<std::vector<double>>> hodge_star(double a, double b11, double b22);

/// Matrix of the induced action of phi on H^q with respect to the chosen
/// bases: the action (phi . chi)(X) = chi(phi^{-1} X) on forms descends to
/// cohomology; columns are coordinates of phi . (basis form) modulo im d.
ExactMatrix cohomology_action(const GradedAutomorphism& phi, const CohomologyData& coh,
                              const GradedLieAlgebra& L, int q);

}  // namespace rumin
