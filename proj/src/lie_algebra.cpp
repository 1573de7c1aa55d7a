#include "ruminlab/lie_algebra.hpp"

#include <stdexcept>

namespace rumin {

namespace {

std::vector<std::vector<std::vector<Rational>>> zero_bracket(int n) {
  return std::vector<std::vector<std::vector<Rational>>>(
      n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
}

}  // namespace

GradedLieAlgebra::GradedLieAlgebra(std::string name, std::vector<int> degrees,
                                   std::vector<std::vector<std::vector<Rational>>> bracket)
    : name_(std::move(name)), degrees_(std::move(degrees)), bracket_(std::move(bracket)) {
  validate();
}

void GradedLieAlgebra::validate() const {
  const int n = dim();
  for (int i = 0; i < n; ++i)
    if (degrees_[i] > -1 || degrees_[i] < -3)
      throw std::invalid_argument("GradedLieAlgebra: degrees must lie in {-1,-2,-3}");
  // Antisymmetry and grading compatibility.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (bracket_[i][j][k] != -bracket_[j][i][k])
          throw std::invalid_argument("GradedLieAlgebra: bracket not antisymmetric");
        if (bracket_[i][j][k] != 0 && degrees_[k] != degrees_[i] + degrees_[j])
          throw std::invalid_argument("GradedLieAlgebra: bracket violates grading");
      }
  // Jacobi identity on all basis triples: [[Xi,Xj],Xk] + cyclic = 0.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          Rational sum = 0;
          for (int l = 0; l < n; ++l) {
            sum += bracket_[i][j][l] * bracket_[l][k][m];
            sum += bracket_[j][k][l] * bracket_[l][i][m];
            sum += bracket_[k][i][l] * bracket_[l][j][m];
          }
          if (sum != 0) throw std::invalid_argument("GradedLieAlgebra: Jacobi fails");
        }
}

GradedLieAlgebra GradedLieAlgebra::g235() {
  auto c = zero_bracket(5);
  auto set = [&](int i, int j, int k) {
    c[i][j][k] = 1;
    c[j][i][k] = -1;
  };
  set(0, 1, 2);  // X3 = [X1, X2]
  set(0, 2, 3);  // X4 = [X1, X3]
  set(1, 2, 4);  // X5 = [X2, X3]
  return GradedLieAlgebra("235", {-1, -1, -2, -3, -3}, std::move(c));
}

GradedLieAlgebra GradedLieAlgebra::heisenberg() {
  auto c = zero_bracket(3);
  c[0][1][2] = 1;
  c[1][0][2] = -1;
  return GradedLieAlgebra("heisenberg", {-1, -1, -2}, std::move(c));
}

GradedLieAlgebra GradedLieAlgebra::abelian(int n) {
  if (n < 1) throw std::invalid_argument("abelian: n must be positive");
  return GradedLieAlgebra("abelian:" + std::to_string(n), std::vector<int>(n, -1),
                          zero_bracket(n));
}

namespace {

// Verifies phi([Xi,Xj]) = [phi(Xi), phi(Xj)] for all basis pairs.
void check_bracket_preservation(const GradedLieAlgebra& L, const ExactMatrix& M) {
  const int n = L.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        ExactScalar lhs;  // coordinates of phi([Xi,Xj])
        for (int k = 0; k < n; ++k) lhs += ExactScalar(L.c(i, j, k)) * M(m, k);
        ExactScalar rhs;  // coordinates of [phi(Xi), phi(Xj)]
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            if (M(a, i).is_zero() || M(b, j).is_zero()) continue;
            if (L.c(a, b, m) == 0) continue;
            rhs += M(a, i) * M(b, j) * ExactScalar(L.c(a, b, m));
          }
        if (!(lhs == rhs))
          throw std::logic_error("extend_automorphism: bracket preservation failed");
      }
}

}  // namespace

GradedAutomorphism extend_automorphism(const GradedLieAlgebra& L, const ExactMatrix& phi) {
  if (phi.rows() != 2 || phi.cols() != 2)
    throw std::invalid_argument("extend_automorphism: Phi must be 2x2");
  ExactScalar det = phi(0, 0) * phi(1, 1) - phi(0, 1) * phi(1, 0);
  if (det.is_zero()) throw std::invalid_argument("extend_automorphism: singular Phi");

  GradedAutomorphism out;
  out.algebra = &L;
  out.phi_minus1 = phi;
  if (L.name() == "235") {
    ExactMatrix M(5, 5);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) M(r, c) = phi(r, c);
    M(2, 2) = det;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) M(3 + r, 3 + c) = phi(r, c) * det;
    out.full_matrix = M;
  } else if (L.name() == "heisenberg") {
    ExactMatrix M(3, 3);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) M(r, c) = phi(r, c);
    M(2, 2) = det;
    out.full_matrix = M;
  } else {
    throw std::invalid_argument(
        "extend_automorphism: algebra lacks the required graded structure");
  }
  check_bracket_preservation(L, out.full_matrix);
  return out;
}

GradedAutomorphism grading_automorphism(const GradedLieAlgebra& L, const Rational& t) {
  ExactMatrix phi(2, 2);
  phi(0, 0) = ExactScalar(t);
  phi(1, 1) = ExactScalar(t);
  return extend_automorphism(L, phi);
}

}  // namespace rumin
