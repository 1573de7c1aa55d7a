#pragma once

#include <string>
#include <vector>

#include "ruminlab/exact.hpp"

namespace rumin {

/// Graded nilpotent Lie algebra given by a basis X_1..X_n, integer degrees in
/// {-1,-2,-3} and structure constants [X_i,X_j] = sum_k c_{ij}^k X_k.
/// Instances are immutable after construction and validated:
/// antisymmetry, the Jacobi identity, and grading compatibility hold exactly.
class GradedLieAlgebra {
 public:
  GradedLieAlgebra(std::string name, std::vector<int> degrees,
                   std::vector<std::vector<std::vector<Rational>>> bracket);

  static GradedLieAlgebra g235();
  static GradedLieAlgebra heisenberg();
  static GradedLieAlgebra abelian(int n);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(degrees_.size()); }
  int degree(int i) const { return degrees_[i]; }
  /// Positive homogeneity weight of X_i (= -degree).
  int weight(int i) const { return -degrees_[i]; }

  /// c_{ij}^k with 0-based indices.
  const Rational& c(int i, int j, int k) const { return bracket_[i][j][k]; }

  /// Coordinates of [X_i, X_j] in the basis.
  std::vector<Rational> bracket(int i, int j) const { return bracket_[i][j]; }

  bool operator==(const GradedLieAlgebra& o) const {
    return degrees_ == o.degrees_ && bracket_ == o.bracket_;
  }

 private:
  void validate() const;

  std::string name_;
  std::vector<int> degrees_;
  std::vector<std::vector<std::vector<Rational>>> bracket_;
};

/// Graded automorphism determined by its restriction Phi to the degree -1
/// part; the full matrix acts block-diagonally as (Phi, det Phi, Phi det Phi)
/// on the (2,3,5) algebra and (Phi, det Phi) on the Heisenberg algebra.
struct GradedAutomorphism {
  const GradedLieAlgebra* algebra = nullptr;
  ExactMatrix phi_minus1;   // 2x2 block on the generators
  ExactMatrix full_matrix;  // dim x dim, columns = images of the X_i
};

/// Extends an invertible 2x2 matrix on the generator level to a graded
/// automorphism; verifies bracket preservation exactly.
GradedAutomorphism extend_automorphism(const GradedLieAlgebra& L, const ExactMatrix& phi);

/// The grading automorphism phi_t (Phi = t * I).
GradedAutomorphism grading_automorphism(const GradedLieAlgebra& L, const Rational& t);

}  // namespace rumin
