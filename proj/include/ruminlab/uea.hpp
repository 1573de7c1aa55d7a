#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ruminlab/exact.hpp"
#include "ruminlab/lie_algebra.hpp"

namespace rumin {

inline constexpr int kMaxGenerators = 16;

/// PBW monomial X_1^{e1} ... X_n^{en} as an exponent vector.
struct Monomial {
  std::array<int, kMaxGenerators> e{};

  bool operator<(const Monomial& o) const { return e < o.e; }
  bool operator==(const Monomial& o) const { return e == o.e; }
  int total_length() const {
    int s = 0;
    for (int x : e) s += x;
    return s;
  }
};

/// Element of the universal enveloping algebra U(g) in PBW normal form:
/// a finite sum of monomials X_1^{e1}...X_n^{en} with ExactScalar
/// coefficients. Zero coefficients are never stored.
class UEAElement {
 public:
  UEAElement() = default;
  explicit UEAElement(const GradedLieAlgebra* alg) : alg_(alg) {}

  static UEAElement zero(const GradedLieAlgebra& alg) { return UEAElement(&alg); }
  static UEAElement constant(const GradedLieAlgebra& alg, const ExactScalar& c);
  /// The generator X_{j+1} (0-based index j).
  static UEAElement generator(const GradedLieAlgebra& alg, int j);
  /// Product X_{j1+1} X_{j2+1} ... of generators, normal ordered.
  static UEAElement word(const GradedLieAlgebra& alg, const std::vector<int>& js);

  const GradedLieAlgebra* algebra() const { return alg_; }
  const std::map<Monomial, ExactScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  void add_term(const Monomial& m, const ExactScalar& c);

  UEAElement operator-() const;
  UEAElement& operator+=(const UEAElement& o);
  UEAElement& operator-=(const UEAElement& o);
  friend UEAElement operator+(UEAElement x, const UEAElement& y) { return x += y; }
  friend UEAElement operator-(UEAElement x, const UEAElement& y) { return x -= y; }
  /// Product with PBW re-normal-ordering.
  friend UEAElement operator*(const UEAElement& x, const UEAElement& y);
  UEAElement scaled(const ExactScalar& s) const;

  bool operator==(const UEAElement& o) const { return terms_ == o.terms_; }

  /// Formal adjoint: reverses factors, maps X_j to -X_j, conjugates
  /// coefficients, and re-normal-orders.
  UEAElement adjoint() const;

  /// Homogeneity degree (weights 1,1,2,3,3 on the (2,3,5) algebra), or
  /// nullopt if the monomials disagree. Zero elements report degree of any
  /// monomial vacuously; by convention nullopt is never returned for zero.
  std::optional<int> homogeneity_degree() const;

  std::string str() const;

 private:
  const GradedLieAlgebra* alg_ = nullptr;
  std::map<Monomial, ExactScalar> terms_;
};

/// Normal-orders the word X_{w0+1} X_{w1+1} ... by repeatedly applying
/// X_a X_b -> X_b X_a + [X_a, X_b] at the first descent (a > b).
UEAElement normal_order_word(const GradedLieAlgebra& alg, const std::vector<int>& word,
                             const ExactScalar& coeff);

/// Applies a graded automorphism to an element: substitutes each generator
/// X_j by sum_k M_{kj} X_k and re-normal-orders. Multiplicative.
UEAElement apply_automorphism(const GradedAutomorphism& phi, const UEAElement& x);

/// Rectangular matrix with UEAElement entries; represents Rumin
/// differentials D_q and Rumin-Seshadri operators.
class OpPolyMatrix {
 public:
  OpPolyMatrix() = default;
  OpPolyMatrix(const GradedLieAlgebra& alg, int rows, int cols)
      : alg_(&alg), rows_(rows), cols_(cols), data_(rows * cols, UEAElement(&alg)) {}

  const GradedLieAlgebra* algebra() const { return alg_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  UEAElement& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const UEAElement& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool operator==(const OpPolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  friend OpPolyMatrix operator*(const OpPolyMatrix& x, const OpPolyMatrix& y);
  friend OpPolyMatrix operator+(const OpPolyMatrix& x, const OpPolyMatrix& y);
  friend OpPolyMatrix operator-(const OpPolyMatrix& x, const OpPolyMatrix& y);
  OpPolyMatrix scaled(const ExactScalar& s) const;
  OpPolyMatrix power(int k) const;

  /// Entrywise formal adjoint combined with transposition.
  OpPolyMatrix adjoint() const;

  /// Left/right multiplication by scalar matrices (e.g. h_q factors).
  OpPolyMatrix left_mul(const ExactMatrix& m) const;
  OpPolyMatrix right_mul(const ExactMatrix& m) const;

  /// Common homogeneity degree of all nonzero entries, or nullopt.
  std::optional<int> homogeneity_degree() const;

  OpPolyMatrix apply(const GradedAutomorphism& phi) const;

 private:
  const GradedLieAlgebra* alg_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<UEAElement> data_;
};

}  // namespace rumin
