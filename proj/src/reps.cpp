#include "ruminlab/reps.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <cmath>
#include <stdexcept>

namespace rumin {

void validate_spec(const RepresentationSpec& spec) {
  if (const auto* s = std::get_if<SchroedingerRep>(&spec)) {
    if (s->hbar == 0) throw std::invalid_argument("SchroedingerRep: hbar must be nonzero");
  } else if (const auto* g = std::get_if<GenericRep>(&spec)) {
    if (g->lambda == 0 && g->mu == 0)
      throw std::invalid_argument("GenericRep: (lambda, mu) must be nonzero");
  }
}

void validate_trunc(const TruncationConfig& t) {
  if (t.N < 8) throw std::invalid_argument("TruncationConfig: N >= 8 required");
  if (t.G < 0) throw std::invalid_argument("TruncationConfig: G >= 0 required");
}

MatrixXcd theta_matrix(int m) {
  MatrixXcd t = MatrixXcd::Zero(m, m);
  for (int n = 0; n + 1 < m; ++n) {
    double v = std::sqrt((n + 1) / 2.0);
    t(n, n + 1) = v;
    t(n + 1, n) = v;
  }
  return t;
}

MatrixXcd dtheta_matrix(int m) {
  MatrixXcd d = MatrixXcd::Zero(m, m);
  for (int n = 0; n + 1 < m; ++n) {
    double v = std::sqrt((n + 1) / 2.0);
    d(n, n + 1) = v;
    d(n + 1, n) = -v;
  }
  return d;
}

std::vector<MatrixXcd> generator_matrices(const GradedLieAlgebra& L,
                                          const RepresentationSpec& spec,
                                          const TruncationConfig& trunc) {
  validate_spec(spec);
  validate_trunc(trunc);
  const Complex I(0, 1);
  std::vector<MatrixXcd> gens(L.dim());

  if (const auto* s = std::get_if<ScalarRep>(&spec)) {
    // Factors through the abelianization: X_1, X_2 act as scalars, the
    // derived generators act as zero.
    for (auto& g : gens) g = MatrixXcd::Zero(1, 1);
    gens[0](0, 0) = I * s->v;
    if (L.dim() > 1) gens[1](0, 0) = I * s->w;
    return gens;
  }

  const int m = trunc.N + trunc.G;
  MatrixXcd th = theta_matrix(m);
  MatrixXcd dth = dtheta_matrix(m);

  if (const auto* s = std::get_if<SchroedingerRep>(&spec)) {
    if (L.name() != "235" && L.name() != "heisenberg")
      throw std::invalid_argument("Schroedinger representation needs X3 = [X1,X2]");
    double h = s->hbar;
    double rh = std::sqrt(std::abs(h));
    double sgn = (h > 0) ? 1.0 : -1.0;
    gens[0] = rh * dth;
    gens[1] = I * sgn * rh * th;
    gens[2] = I * h * MatrixXcd::Identity(m, m);
    for (int j = 3; j < L.dim(); ++j) gens[j] = MatrixXcd::Zero(m, m);
    return gens;
  }

  const auto& g = std::get<GenericRep>(spec);
  if (L.name() != "235")
    throw std::invalid_argument("Generic representation is specific to the (2,3,5) algebra");
  double r2 = g.lambda * g.lambda + g.mu * g.mu;
  double c = std::cbrt(r2);  // (lambda^2 + mu^2)^{1/3}
  MatrixXcd pot = (th * th + (g.nu / (c * c)) * MatrixXcd::Identity(m, m)) / 2.0;
  gens[0] = (g.lambda / c) * dth - I * (g.mu / c) * pot;
  gens[1] = (g.mu / c) * dth + I * (g.lambda / c) * pot;
  gens[2] = I * c * th;
  gens[3] = I * g.lambda * MatrixXcd::Identity(m, m);
  gens[4] = I * g.mu * MatrixXcd::Identity(m, m);
  return gens;
}

int block_size(const RepresentationSpec& spec, const TruncationConfig& trunc) {
  return std::holds_alternative<ScalarRep>(spec) ? 1 : trunc.N;
}

namespace {

// Compact band storage: entry (i, j) with |i - j| <= bw lives at
// d[i * (2 bw + 1) + (j - i + bw)].
struct Band {
  int n = 0, bw = 0;
  std::vector<Complex> d;

  Band() = default;
  Band(int n_, int bw_) : n(n_), bw(std::min(bw_, n_ - 1)), d((2 * bw + 1) * n, Complex(0)) {}

  Complex& at(int i, int j) { return d[i * (2 * bw + 1) + (j - i + bw)]; }
  Complex get(int i, int j) const {
    if (std::abs(i - j) > bw) return 0;
    return d[i * (2 * bw + 1) + (j - i + bw)];
  }

  static Band identity(int n) {
    Band b(n, 0);
    for (int i = 0; i < n; ++i) b.at(i, i) = 1;
    return b;
  }

  static Band from_dense(const MatrixXcd& m) {
    int bw = 0;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0.0) bw = std::max(bw, std::abs(i - j));
    Band b(static_cast<int>(m.rows()), bw);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = std::max(0, i - b.bw); j <= std::min<int>(m.rows() - 1, i + b.bw); ++j)
        b.at(i, j) = m(i, j);
    return b;
  }
};

Band band_mul(const Band& A, const Band& B) {
  Band C(A.n, std::min(A.n - 1, A.bw + B.bw));
  for (int i = 0; i < A.n; ++i) {
    int kmin = std::max(0, i - A.bw), kmax = std::min(A.n - 1, i + A.bw);
    for (int k = kmin; k <= kmax; ++k) {
      Complex a = A.get(i, k);
      if (a == 0.0) continue;
      int jmin = std::max({0, k - B.bw, i - C.bw});
      int jmax = std::min({A.n - 1, k + B.bw, i + C.bw});
      for (int j = jmin; j <= jmax; ++j) C.at(i, j) += a * B.get(k, j);
    }
  }
  return C;
}

}  // namespace

MatrixXcd evaluate_with_generators(const OpPolyMatrix& M, const std::vector<MatrixXcd>& gens,
                                   int block_out) {
  const int m = gens.empty() ? 1 : static_cast<int>(gens[0].rows());
  const int dim = M.algebra()->dim();
  std::vector<Band> gen_band(gens.size());
  for (size_t j = 0; j < gens.size(); ++j) gen_band[j] = Band::from_dense(gens[j]);

  // Monomial products are shared across matrix entries; build each from its
  // longest computed prefix (one banded multiply per distinct monomial).
  std::map<Monomial, Band> cache;
  std::function<const Band&(const Monomial&)> product =
      [&](const Monomial& mono) -> const Band& {
    auto it = cache.find(mono);
    if (it != cache.end()) return it->second;
    int last = -1;
    for (int j = dim - 1; j >= 0; --j)
      if (mono.e[j] > 0) { last = j; break; }
    if (last < 0) {
      auto [ins, ok] = cache.emplace(mono, Band::identity(m));
      return ins->second;
    }
    Monomial prefix = mono;
    --prefix.e[last];
    const Band& pm = product(prefix);
    auto [ins, ok] = cache.emplace(mono, band_mul(pm, gen_band[last]));
    return ins->second;
  };

  MatrixXcd out = MatrixXcd::Zero(M.rows() * block_out, M.cols() * block_out);
  for (int r = 0; r < M.rows(); ++r)
    for (int c = 0; c < M.cols(); ++c) {
      const UEAElement& e = M(r, c);
      if (e.is_zero()) continue;
      auto cell = out.block(r * block_out, c * block_out, block_out, block_out);
      for (const auto& [mono, coeff] : e.terms()) {
        const Band& b = product(mono);
        Complex z = coeff.to_complex();
        for (int i = 0; i < block_out; ++i) {
          int jmin = std::max(0, i - b.bw), jmax = std::min(block_out - 1, i + b.bw);
          for (int j = jmin; j <= jmax; ++j) cell(i, j) += z * b.get(i, j);
        }
      }
    }
  return out;
}

MatrixXcd evaluate(const OpPolyMatrix& M, const RepresentationSpec& spec,
                   const TruncationConfig& trunc) {
  // Raise the guard band when the polynomial demands it (G >= 3 x maximal
  // monomial length x single-generator bandwidth), so the interior blocks
  // are always the exact compression.
  int max_len = 0;
  for (int r = 0; r < M.rows(); ++r)
    for (int c = 0; c < M.cols(); ++c)
      for (const auto& [mono, coeff] : M(r, c).terms())
        max_len = std::max(max_len, mono.total_length());
  int bandwidth = 0;
  if (std::holds_alternative<SchroedingerRep>(spec)) bandwidth = 1;
  if (std::holds_alternative<GenericRep>(spec)) bandwidth = 2;
  TruncationConfig eff = trunc;
  eff.G = std::max(trunc.G, 3 * max_len * bandwidth);
  auto gens = generator_matrices(*M.algebra(), spec, eff);
  return evaluate_with_generators(M, gens, block_size(spec, eff));
}

double casimir_check(const GradedLieAlgebra& L, const GenericRep& rep,
                     const TruncationConfig& trunc) {
  if (L.name() != "235") throw std::invalid_argument("casimir_check: (2,3,5) only");
  auto X = [&](std::vector<int> w) {
    for (auto& j : w) --j;
    return UEAElement::word(L, w);
  };
  UEAElement cas = X({3, 3}) + X({1, 5}).scaled(ExactScalar(2)) -
                   X({2, 4}).scaled(ExactScalar(2));
  OpPolyMatrix M(L, 1, 1);
  M(0, 0) = cas;
  MatrixXcd val = evaluate(M, rep, trunc);
  MatrixXcd residual = val - rep.nu * MatrixXcd::Identity(val.rows(), val.cols());
  return residual.cwiseAbs().maxCoeff();
}

}  // namespace rumin
