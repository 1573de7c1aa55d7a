#include "ruminlab/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rumin {

namespace {

void gen_subsets(int n, int q, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == q) {
    out.push_back(cur);
    return;
  }
  for (int j = start; j < n; ++j) {
    cur.push_back(j);
    gen_subsets(n, q, j + 1, cur, out);
    cur.pop_back();
  }
}

ExactScalar exact_det(const ExactMatrix& m) {
  const int n = m.rows();
  ExactMatrix a = m;
  ExactScalar det(1);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = col; r < n; ++r)
      if (!a(r, col).is_zero()) { p = r; break; }
    if (p < 0) return ExactScalar(0);
    if (p != col) {
      for (int c = 0; c < n; ++c) std::swap(a(p, c), a(col, c));
      det = -det;
    }
    det = det * a(col, col);
    ExactScalar inv = a(col, col).inverse();
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      ExactScalar f = a(r, col) * inv;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

ExactScalar half_sqrt2() { return ExactScalar(0, Rational(1, 2), 0, 0); }  // 1/sqrt2

Rational as_rational(const ExactScalar& s, const char* what) {
  if (!s.is_rational()) throw std::invalid_argument(std::string(what) + ": not rational");
  return s.re_rat();
}

}  // namespace

ExteriorBasis::ExteriorBasis(int n, int q) {
  if (q < 0 || q > n) throw std::out_of_range("ExteriorBasis: bad degree");
  std::vector<int> cur;
  gen_subsets(n, q, 0, cur, subsets_);
}

int ExteriorBasis::index_of(const std::vector<int>& s) const {
  auto it = std::lower_bound(subsets_.begin(), subsets_.end(), s);
  if (it == subsets_.end() || *it != s) throw std::out_of_range("ExteriorBasis: no such subset");
  return static_cast<int>(it - subsets_.begin());
}

std::optional<std::pair<int, std::vector<int>>> ExteriorBasis::wedge(
    int j, const std::vector<int>& subset) {
  std::vector<int> out;
  out.reserve(subset.size() + 1);
  int sign = 1;
  bool placed = false;
  for (int s : subset) {
    if (s == j) return std::nullopt;
    if (!placed && s > j) {
      out.push_back(j);
      placed = true;
    }
    if (!placed) sign = -sign;
    out.push_back(s);
  }
  if (!placed) out.push_back(j);
  return std::make_pair(sign, out);
}

ExactMatrix chevalley_eilenberg(const GradedLieAlgebra& L, int q) {
  const int n = L.dim();
  if (q < 0 || q > n) throw std::out_of_range("chevalley_eilenberg: degree out of range");
  ExteriorBasis dom(n, q), cod(n, std::min(q + 1, n));
  if (q == n) return ExactMatrix(0, dom.dim());
  ExactMatrix d(cod.dim(), dom.dim());
  // d(chi^{s1..sq}) = sum_r (-1)^{r-1} chi^{s1..} ^ d(chi^{s_r}) ^ {..sq}
  // with d(chi^k) = -sum_{i<j} c_{ij}^k chi^i ^ chi^j.
  for (int col = 0; col < dom.dim(); ++col) {
    const auto& S = dom.subset(col);
    for (size_t r = 0; r < S.size(); ++r) {
      std::vector<int> rest;
      for (size_t t = 0; t < S.size(); ++t)
        if (t != r) rest.push_back(S[t]);
      int leibniz = (r % 2 == 0) ? 1 : -1;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const Rational& c = L.c(i, j, S[r]);
          if (c == 0) continue;
          auto w1 = ExteriorBasis::wedge(j, rest);
          if (!w1) continue;
          auto w2 = ExteriorBasis::wedge(i, w1->second);
          if (!w2) continue;
          int row = cod.index_of(w2->second);
          d(row, col) += ExactScalar(-c * leibniz * w1->first * w2->first);
        }
    }
  }
  // q = 0 case: the empty form has zero differential; matrix already zero.
  return d;
}

std::vector<int> betti_numbers(const GradedLieAlgebra& L) {
  const int n = L.dim();
  std::vector<int> betti(n + 1);
  int prev_rank = 0;
  for (int q = 0; q <= n; ++q) {
    ExactMatrix d = chevalley_eilenberg(L, q);
    int rank = (q == n) ? 0 : d.rank();
    int dim_q = ExteriorBasis(n, q).dim();
    betti[q] = dim_q - rank - prev_rank;
    prev_rank = rank;
  }
  return betti;
}

GradedMetric::GradedMetric(const GradedLieAlgebra& L, ExactMatrix gram)
    : alg_(&L), gram_(std::move(gram)) {
  const int n = L.dim();
  if (gram_.rows() != n || gram_.cols() != n)
    throw std::invalid_argument("GradedMetric: Gram shape mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!(gram_(i, j) == gram_(j, i)))
        throw std::invalid_argument("GradedMetric: Gram not symmetric");
      if (!gram_(i, j).is_real())
        throw std::invalid_argument("GradedMetric: Gram must be real");
      if (L.degree(i) != L.degree(j) && !gram_(i, j).is_zero())
        throw std::invalid_argument("GradedMetric: Gram not graded");
    }
  // Positive definite: all leading principal minors positive (real, Q(sqrt2)).
  for (int k = 1; k <= n; ++k) {
    ExactMatrix lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead(i, j) = gram_(i, j);
    ExactScalar det = exact_det(lead);
    double v = det.to_complex().real();
    if (v <= 0) throw std::invalid_argument("GradedMetric: not positive definite");
  }
  gram_inv_ = gram_.inverse();
}

GradedMetric GradedMetric::normal_form(const GradedLieAlgebra& L, const Rational& a,
                                       const Rational& b11, const Rational& b22) {
  if (L.name() == "235") {
    ExactMatrix g(5, 5);
    g(0, 0) = ExactScalar(1);
    g(1, 1) = ExactScalar(1);
    g(2, 2) = ExactScalar(a);
    g(3, 3) = ExactScalar(a * b11);
    g(4, 4) = ExactScalar(a * b22);
    return GradedMetric(L, g);
  }
  if (L.name() == "heisenberg") {
    ExactMatrix g(3, 3);
    g(0, 0) = ExactScalar(1);
    g(1, 1) = ExactScalar(1);
    g(2, 2) = ExactScalar(a);
    return GradedMetric(L, g);
  }
  throw std::invalid_argument("GradedMetric::normal_form: unsupported algebra");
}

GradedMetric GradedMetric::standard(const GradedLieAlgebra& L) {
  return GradedMetric(L, ExactMatrix::identity(L.dim()));
}

bool GradedMetric::is_normal_form() const {
  const int n = alg_->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !gram_(i, j).is_zero()) return false;
  for (int i = 0; i < n; ++i)
    if (alg_->degree(i) == -1 && !(gram_(i, i) == ExactScalar(1))) return false;
  return true;
}

ExactMatrix GradedMetric::lambda_gram(int q) const {
  ExteriorBasis basis(alg_->dim(), q);
  ExactMatrix g(basis.dim(), basis.dim());
  for (int r = 0; r < basis.dim(); ++r)
    for (int c = r; c < basis.dim(); ++c) {
      const auto& I = basis.subset(r);
      const auto& J = basis.subset(c);
      ExactMatrix sub(q, q);
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) sub(x, y) = gram_inv_(I[x], J[y]);
      ExactScalar v = (q == 0) ? ExactScalar(1) : exact_det(sub);
      g(r, c) = v;
      g(c, r) = v;
    }
  return g;
}

MetricInvariants metric_invariants(const GradedMetric& g) {
  const GradedLieAlgebra& L = g.algebra();
  const ExactMatrix& G = g.gram();
  MetricInvariants out;
  if (L.name() == "235" || L.name() == "heisenberg") {
    Rational g11 = as_rational(G(0, 0), "metric_invariants");
    Rational g12 = as_rational(G(0, 1), "metric_invariants");
    Rational g22 = as_rational(G(1, 1), "metric_invariants");
    Rational g33 = as_rational(G(2, 2), "metric_invariants");
    Rational det1 = g11 * g22 - g12 * g12;
    out.a = g33 / det1;
    // Defining identity g_{-2}([X,Y],[X,Y]) = a (g(X,X)g(Y,Y)-g(X,Y)^2)
    // reduces to exactly this ratio; assert it is positive.
    if (out.a <= 0) throw std::logic_error("metric_invariants: a_g not positive");
    if (L.name() == "235") {
      out.b = ExactMatrix(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          out.b(i, j) = ExactScalar(as_rational(G(3 + i, 3 + j), "metric_invariants") / g33);
      // Verify E:bg on the basis: g([Xi,X3],[Xj,X3]) = g(X3,X3) b(Xi,Xj).
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          if (!(G(3 + i, 3 + j) == ExactScalar(g33) * out.b(i, j)))
            throw std::logic_error("metric_invariants: b_g identity failed");
    } else {
      out.b = ExactMatrix(0, 0);
    }
    return out;
  }
  throw std::invalid_argument("metric_invariants: unsupported algebra");
}

GradedMetric metric_action(const GradedAutomorphism& phi, const GradedMetric& g) {
  ExactMatrix Minv = phi.full_matrix.inverse();
  ExactMatrix G2 = Minv.transpose() * g.gram() * Minv;
  return GradedMetric(g.algebra(), G2);
}

namespace {

// Builds a column vector in Lambda^q coordinates from (subset, coefficient)
// pairs; subsets are 1-based generator lists matching the paper's notation.
ExactMatrix form(const ExteriorBasis& basis, int dim_lambda,
                 const std::vector<std::pair<std::vector<int>, ExactScalar>>& terms) {
  ExactMatrix v(dim_lambda, 1);
  for (const auto& [subset1, coeff] : terms) {
    std::vector<int> s;
    for (int j : subset1) s.push_back(j - 1);
    v(basis.index_of(s), 0) += coeff;
  }
  return v;
}

ExactMatrix hcat(const std::vector<ExactMatrix>& cols) {
  if (cols.empty()) return ExactMatrix(0, 0);
  int rows = cols[0].rows();
  int total = 0;
  for (const auto& c : cols) total += c.cols();
  ExactMatrix m(rows, total);
  int at = 0;
  for (const auto& c : cols) {
    for (int j = 0; j < c.cols(); ++j, ++at)
      for (int r = 0; r < rows; ++r) m(r, at) = c(r, j);
  }
  return m;
}

ExactMatrix column(const ExactMatrix& m, int j) {
  ExactMatrix v(m.rows(), 1);
  for (int r = 0; r < m.rows(); ++r) v(r, 0) = m(r, j);
  return v;
}

// Independent columns of m (first maximal set, by exact elimination).
ExactMatrix independent_columns(const ExactMatrix& m) {
  std::vector<ExactMatrix> keep;
  ExactMatrix acc(m.rows(), 0);
  int rank = 0;
  for (int j = 0; j < m.cols(); ++j) {
    ExactMatrix trial = hcat({acc, column(m, j)});
    if (trial.rank() > rank) {
      acc = trial;
      rank = acc.cols();
    }
  }
  return acc;
}

}  // namespace

CohomologyData harmonic_basis(const GradedLieAlgebra& L, const GradedMetric& g) {
  CohomologyData coh;
  const int n = L.dim();
  coh.betti = betti_numbers(L);
  if (L.name() == "235") {
    coh.N = {0, 1, 4, 6, 9, 10};
    if (coh.betti != std::vector<int>{1, 2, 3, 3, 2, 1})
      throw std::logic_error("harmonic_basis: unexpected Betti numbers");
  } else if (L.name() == "heisenberg") {
    coh.N = {0, 1, 3, 4};
  } else {
    coh.N.resize(n + 1);
    for (int q = 0; q <= n; ++q) coh.N[q] = q;
  }
  coh.k.resize(n);
  for (int q = 0; q < n; ++q) coh.k[q] = coh.N[q + 1] - coh.N[q];

  coh.basis.resize(n + 1);
  coh.im_span.resize(n + 1);
  const ExactScalar one(1), is2 = half_sqrt2();

  for (int q = 0; q <= n; ++q) {
    ExteriorBasis basis(n, q);
    // Image of the previous differential, exact column space.
    if (q == 0) {
      coh.im_span[q] = ExactMatrix(basis.dim(), 0);
    } else {
      coh.im_span[q] = independent_columns(chevalley_eilenberg(L, q - 1));
    }
  }

  if (L.name() == "235") {
    ExteriorBasis b2(5, 2), b3(5, 3);
    auto F = [&](int q, std::vector<std::pair<std::vector<int>, ExactScalar>> t) {
      ExteriorBasis basis(5, q);
      return form(basis, basis.dim(), std::move(t));
    };
    coh.basis[0] = F(0, {{{}, one}});
    coh.basis[1] = hcat({F(1, {{{1}, one}}), F(1, {{{2}, one}})});
    coh.basis[2] = hcat({F(2, {{{1, 4}, one}}),
                         F(2, {{{1, 5}, is2}, {{2, 4}, is2}}),
                         F(2, {{{2, 5}, one}})});
    // Middle q=3 element: representative orthogonal to im(partial_2); for
    // b11 == b22 this is (chi135 + chi234)/sqrt2.
    MetricInvariants inv = metric_invariants(g);
    Rational b11 = as_rational(inv.b(0, 0), "harmonic_basis");
    Rational b22 = as_rational(inv.b(1, 1), "harmonic_basis");
    Rational bu11 = 1 / b11, bu22 = 1 / b22;  // b^{jj} = 1/b_{jj}
    ExactScalar c135 = ExactScalar(Rational(0), bu11 / (bu11 + bu22), 0, 0);
    ExactScalar c234 = ExactScalar(Rational(0), bu22 / (bu11 + bu22), 0, 0);
    coh.basis[3] = hcat({F(3, {{{1, 3, 4}, one}}),
                         F(3, {{{1, 3, 5}, c135}, {{2, 3, 4}, c234}}),
                         F(3, {{{2, 3, 5}, one}})});
    coh.basis[4] = hcat({F(4, {{{1, 3, 4, 5}, one}}), F(4, {{{2, 3, 4, 5}, one}})});
    coh.basis[5] = F(5, {{{1, 2, 3, 4, 5}, one}});
  } else if (L.name() == "heisenberg") {
    auto F = [&](int q, std::vector<std::pair<std::vector<int>, ExactScalar>> t) {
      ExteriorBasis basis(3, q);
      return form(basis, basis.dim(), std::move(t));
    };
    coh.basis[0] = F(0, {{{}, one}});
    coh.basis[1] = hcat({F(1, {{{1}, one}}), F(1, {{{2}, one}})});
    coh.basis[2] = hcat({F(2, {{{1, 3}, one}}), F(2, {{{2, 3}, one}})});
    coh.basis[3] = F(3, {{{1, 2, 3}, one}});
  } else {
    // Abelian: the de Rham case; every wedge monomial is a basis class.
    for (int q = 0; q <= n; ++q) {
      ExteriorBasis basis(n, q);
      coh.basis[q] = ExactMatrix::identity(basis.dim());
    }
  }

  // Validation: each chosen form is closed, and together with im(partial)
  // spans ker(partial) exactly.
  for (int q = 0; q <= n; ++q) {
    ExactMatrix d = chevalley_eilenberg(L, q);
    if (q < n && !(d * coh.basis[q]).is_zero())
      throw std::logic_error("harmonic_basis: chosen form not closed");
    int ker_dim = coh.basis[q].cols() + coh.im_span[q].cols();
    ExactMatrix joint = hcat({coh.basis[q], coh.im_span[q]});
    if (joint.rank() != ker_dim)
      throw std::logic_error("harmonic_basis: basis and im(partial) overlap");
    int expect_ker = ExteriorBasis(n, q).dim() - ((q < n) ? d.rank() : 0);
    if (ker_dim != expect_ker) throw std::logic_error("harmonic_basis: kernel not spanned");
  }
  return coh;
}

std::vector<ExactMatrix> hq_closed_form(const Rational& a, const Rational& b11,
                                        const Rational& b22) {
  Rational u = 1 / b11, v = 1 / b22;  // b^{11}, b^{22}
  auto diag = [](std::vector<Rational> d) {
    ExactMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = ExactScalar(d[i]);
    return m;
  };
  std::vector<ExactMatrix> h(6);
  h[0] = diag({Rational(1)});
  h[1] = diag({Rational(1), Rational(1)});
  h[2] = diag({u / a, (u + v) / (2 * a), v / a});
  Rational uv = u * v, a2 = a * a, a3 = a * a * a;
  h[3] = diag({uv / (a2 * v), uv * 2 / (a2 * (u + v)), uv / (a2 * u)});
  h[4] = diag({uv / a3, uv / a3});
  h[5] = diag({uv / a3});
  return h;
}

HermitianComplexForms hermitian_forms(const GradedLieAlgebra& L, const GradedMetric& g) {
  HermitianComplexForms out;
  CohomologyData coh = harmonic_basis(L, g);
  const int n = L.dim();
  out.h.resize(n + 1);
  for (int q = 0; q <= n; ++q) {
    ExactMatrix G = g.lambda_gram(q);
    const ExactMatrix& B = coh.im_span[q];
    ExactMatrix reps = coh.basis[q];
    if (B.cols() > 0) {
      // Harmonic projection: rep = form - B t with B^T G (form - B t) = 0.
      ExactMatrix BtG = B.transpose() * G;
      ExactMatrix lhs = BtG * B;
      ExactMatrix rhs = BtG * coh.basis[q];
      ExactMatrix t = lhs.solve(rhs);
      reps = coh.basis[q] - B * t;
    }
    out.h[q] = reps.transpose() * G * reps;
  }
  if (L.name() == "235") {
    MetricInvariants inv = metric_invariants(g);
    bool diag_b = inv.b(0, 1).is_zero() && g.is_normal_form();
    if (diag_b) {
      double a = inv.a.get_d();
      double b11 = as_rational(inv.b(0, 0), "hermitian_forms").get_d();
      double b22 = as_rational(inv.b(1, 1), "hermitian_forms").get_d();
      out.star = hodge_star(a, b11, b22);
      out.star_exact = (inv.a == 1 && inv.b == ExactMatrix::identity(2));
    }
  }
  return out;
}

std::vector<std::vector<std::vector<double>>> hodge_star(double a, double b11, double b22) {
  double u = 1.0 / b11, v = 1.0 / b22;  // b^{11}, b^{22}
  double ra3 = std::sqrt(a * a * a), ruv = std::sqrt(u * v), ra = std::sqrt(a);
  auto zeros = [](int r, int c) {
    return std::vector<std::vector<double>>(r, std::vector<double>(c, 0.0));
  };
  std::vector<std::vector<std::vector<double>>> star(6);
  star[0] = zeros(1, 1);
  star[0][0][0] = ra3 / ruv;
  star[1] = zeros(2, 2);
  star[1][0][1] = -ra3 / ruv;
  star[1][1][0] = ra3 / ruv;
  star[2] = zeros(3, 3);
  star[2][0][2] = ra / ruv * v;
  star[2][1][1] = -ra / ruv * (u + v) / 2;
  star[2][2][0] = ra / ruv * u;
  star[3] = zeros(3, 3);
  star[3][0][2] = ruv / ra / u;
  star[3][1][1] = -ruv / ra * 2 / (u + v);
  star[3][2][0] = ruv / ra / v;
  star[4] = zeros(2, 2);
  star[4][0][1] = ruv / ra3;
  star[4][1][0] = -ruv / ra3;
  star[5] = zeros(1, 1);
  star[5][0][0] = ruv / ra3;
  return star;
}

ExactMatrix cohomology_action(const GradedAutomorphism& phi, const CohomologyData& coh,
                              const GradedLieAlgebra& L, int q) {
  const int n = L.dim();
  ExactMatrix Minv = phi.full_matrix.inverse();
  ExteriorBasis basis(n, q);
  // Action on Lambda^q: (phi . chi^S) = sum_T det(Minv[S, T]) chi^T.
  ExactMatrix action(basis.dim(), basis.dim());
  for (int col = 0; col < basis.dim(); ++col) {
    const auto& S = basis.subset(col);
    for (int row = 0; row < basis.dim(); ++row) {
      const auto& T = basis.subset(row);
      ExactMatrix sub(q, q);
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) sub(x, y) = Minv(S[x], T[y]);
      action(row, col) = (q == 0) ? ExactScalar(1) : exact_det(sub);
    }
  }
  // Project phi . (basis forms) back onto the chosen basis modulo im(d).
  ExactMatrix moved = action * coh.basis[q];
  ExactMatrix joint = hcat({coh.basis[q], coh.im_span[q]});
  ExactMatrix sol = joint.solve_in_span(moved);
  ExactMatrix K(coh.basis[q].cols(), coh.basis[q].cols());
  for (int r = 0; r < K.rows(); ++r)
    for (int c = 0; c < K.cols(); ++c) K(r, c) = sol(r, c);
  return K;
}

}  // namespace rumin
