#include "ruminlab/rumin_ops.hpp"

#include <numeric>
#include <stdexcept>

namespace rumin {

namespace {

// Shorthand builders over a fixed algebra.
struct Gen {
  const GradedLieAlgebra& L;
  UEAElement operator()(std::initializer_list<int> word1) const {
    std::vector<int> w;
    for (int j : word1) w.push_back(j - 1);
    return UEAElement::word(L, w);
  }
};

ExactScalar r2() { return ExactScalar::sqrt2(); }

}  // namespace

std::vector<OpPolyMatrix> rumin_differentials(const GradedLieAlgebra& L) {
  std::vector<OpPolyMatrix> D;
  Gen X{L};
  if (L.name() == "235") {
    OpPolyMatrix D0(L, 2, 1);
    D0(0, 0) = X({1});
    D0(1, 0) = X({2});

    OpPolyMatrix D1(L, 3, 2);
    D1(0, 0) = -X({1, 1, 2}) - X({1, 3}) - X({4});
    D1(0, 1) = X({1, 1, 1});
    D1(1, 0) = (-X({1, 2, 2}) - X({5})).scaled(r2());
    D1(1, 1) = (X({2, 1, 1}) - X({4})).scaled(r2());
    D1(2, 0) = -X({2, 2, 2});
    D1(2, 1) = X({2, 2, 1}) - X({2, 3}) - X({5});

    OpPolyMatrix D2(L, 3, 3);
    D2(0, 0) = -X({1, 2}) - X({3});
    D2(0, 1) = X({1, 1}).scaled(r2().inverse());
    D2(1, 0) = -X({2, 2}).scaled(r2().inverse());
    D2(1, 1) = X({3}).scaled(ExactScalar(Rational(-3, 2)));
    D2(1, 2) = X({1, 1}).scaled(r2().inverse());
    D2(2, 1) = -X({2, 2}).scaled(r2().inverse());
    D2(2, 2) = X({2, 1}) - X({3});

    OpPolyMatrix D3(L, 2, 3);
    D3(0, 0) = X({1, 2, 2}) + X({3, 2}) - X({5});
    D3(0, 1) = (-X({1, 1, 2}) + X({4})).scaled(r2());
    D3(0, 2) = X({1, 1, 1});
    D3(1, 0) = X({2, 2, 2});
    D3(1, 1) = (-X({2, 2, 1}) - X({5})).scaled(r2());
    D3(1, 2) = X({2, 1, 1}) - X({3, 1}) + X({4});

    OpPolyMatrix D4(L, 1, 2);
    D4(0, 0) = -X({2});
    D4(0, 1) = X({1});

    D = {D0, D1, D2, D3, D4};
  } else if (L.name() == "heisenberg") {
    OpPolyMatrix D0(L, 2, 1);
    D0(0, 0) = X({1});
    D0(1, 0) = X({2});

    OpPolyMatrix D1(L, 2, 2);
    D1(0, 0) = -X({1, 2}) - X({3});
    D1(0, 1) = X({1, 1});
    D1(1, 0) = -X({2, 2});
    D1(1, 1) = X({2, 1}) - X({3});

    OpPolyMatrix D2(L, 1, 2);
    D2(0, 0) = -X({2});
    D2(0, 1) = X({1});

    D = {D0, D1, D2};
  } else {
    // Abelian: the de Rham complex, D_q = sum_j X_j (x) wedge(chi^j).
    const int n = L.dim();
    for (int q = 0; q < n; ++q) {
      ExteriorBasis dom(n, q), cod(n, q + 1);
      OpPolyMatrix Dq(L, cod.dim(), dom.dim());
      for (int col = 0; col < dom.dim(); ++col)
        for (int j = 0; j < n; ++j) {
          auto w = ExteriorBasis::wedge(j, dom.subset(col));
          if (!w) continue;
          int row = cod.index_of(w->second);
          Dq(row, col) += UEAElement::generator(L, j).scaled(ExactScalar(w->first));
        }
      D.push_back(Dq);
    }
  }
  return D;
}

ComplexReport verify_complex(const std::vector<OpPolyMatrix>& D) {
  ComplexReport rep;
  for (size_t q = 0; q + 1 < D.size(); ++q) {
    OpPolyMatrix comp = D[q + 1] * D[q];
    for (int r = 0; r < comp.rows(); ++r)
      for (int c = 0; c < comp.cols(); ++c)
        if (!comp(r, c).is_zero()) {
          rep.ok = false;
          rep.residuals.push_back({static_cast<int>(q), r, c, comp(r, c).str()});
        }
  }
  return rep;
}

OpPolyMatrix adjoint_matrix(const std::vector<ExactMatrix>& h, const OpPolyMatrix& Dq, int q) {
  const ExactMatrix& hq = h.at(q);
  const ExactMatrix& hq1 = h.at(q + 1);
  if (hq.rows() != Dq.cols() || hq1.rows() != Dq.rows())
    throw std::invalid_argument("adjoint_matrix: h shape mismatch");
  return Dq.adjoint().left_mul(hq.inverse()).right_mul(hq1);
}

std::vector<int> seshadri_exponents(const std::vector<int>& k, int* kappa_out) {
  int kappa = 1;
  for (int kq : k) kappa = std::lcm(kappa, kq);
  if (kappa_out) *kappa_out = kappa;
  std::vector<int> a(k.size());
  for (size_t q = 0; q < k.size(); ++q) a[q] = kappa / k[q];
  return a;
}

OpPolyMatrix rumin_seshadri(const GradedLieAlgebra& L, const std::vector<OpPolyMatrix>& D,
                            const std::vector<ExactMatrix>& h, const std::vector<int>& k,
                            int q) {
  const int n = static_cast<int>(D.size());
  if (q < 0 || q > n) throw std::out_of_range("rumin_seshadri: degree out of range");
  std::vector<int> a = seshadri_exponents(k, nullptr);
  OpPolyMatrix acc;
  bool have = false;
  if (q > 0) {
    OpPolyMatrix left = D[q - 1] * adjoint_matrix(h, D[q - 1], q - 1);
    acc = left.power(a[q - 1]);
    have = true;
  }
  if (q < n) {
    OpPolyMatrix right = adjoint_matrix(h, D[q], q) * D[q];
    OpPolyMatrix term = right.power(a[q]);
    acc = have ? acc + term : term;
  }
  return acc;
}

NaturalityReport naturality_check(const GradedLieAlgebra& L, const CohomologyData& coh,
                                  const std::vector<OpPolyMatrix>& D,
                                  const GradedAutomorphism& phi) {
  NaturalityReport rep;
  for (size_t q = 0; q < D.size(); ++q) {
    ExactMatrix Kq = cohomology_action(phi, coh, L, static_cast<int>(q));
    ExactMatrix Kq1 = cohomology_action(phi, coh, L, static_cast<int>(q) + 1);
    OpPolyMatrix moved = D[q].apply(phi).left_mul(Kq1).right_mul(Kq.inverse());
    if (!(moved == D[q])) {
      rep.ok = false;
      rep.failed_degrees.push_back(static_cast<int>(q));
    }
  }
  return rep;
}

}  // namespace rumin
