#include <doctest.h>

#include <random>
#include <vector>

#include "ruminlab/uea.hpp"

using namespace rumin;

namespace {

// Independent term-rewriting oracle: represents elements as coefficient maps
// over raw words and applies ONE relation at a time (always the last descent,
// unlike the library which reduces the first), with no agenda combining.
// Used to cross-check PBW normal ordering.
struct WordPoly {
  std::map<std::vector<int>, ExactScalar> terms;

  void add(const std::vector<int>& w, const ExactScalar& c) {
    auto [it, fresh] = terms.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

WordPoly oracle_normal_order(const GradedLieAlgebra& alg, WordPoly p) {
  while (true) {
    bool changed = false;
    for (const auto& [w, c] : p.terms) {
      int descent = -1;
      for (int i = static_cast<int>(w.size()) - 2; i >= 0; --i)
        if (w[i] > w[i + 1]) { descent = i; break; }
      if (descent < 0) continue;
      WordPoly next;
      for (const auto& [w2, c2] : p.terms)
        if (!(w2 == w)) next.add(w2, c2);
      std::vector<int> swapped = w;
      std::swap(swapped[descent], swapped[descent + 1]);
      next.add(swapped, c);
      for (int k = 0; k < alg.dim(); ++k) {
        if (alg.c(w[descent], w[descent + 1], k) == 0) continue;
        std::vector<int> contracted(w.begin(), w.begin() + descent);
        contracted.push_back(k);
        contracted.insert(contracted.end(), w.begin() + descent + 2, w.end());
        next.add(contracted, c * ExactScalar(alg.c(w[descent], w[descent + 1], k)));
      }
      p = std::move(next);
      changed = true;
      break;
    }
    if (!changed) return p;
  }
}

UEAElement oracle_to_element(const GradedLieAlgebra& alg, const WordPoly& p) {
  UEAElement out(&alg);
  for (const auto& [w, c] : p.terms) {
    Monomial m;
    for (int j : w) ++m.e[j];
    out.add_term(m, c);
  }
  return out;
}

UEAElement oracle_multiply(const GradedLieAlgebra& alg, const std::vector<int>& wx,
                           const std::vector<int>& wy) {
  std::vector<int> w = wx;
  w.insert(w.end(), wy.begin(), wy.end());
  WordPoly p;
  p.add(w, ExactScalar(1));
  return oracle_to_element(alg, oracle_normal_order(alg, p));
}

UEAElement random_element(const GradedLieAlgebra& alg, std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, alg.dim() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> nterms(1, 3);
  UEAElement out(&alg);
  for (int t = 0, n = nterms(rng); t < n; ++t) {
    std::vector<int> w;
    for (int i = 0, l = len(rng); i < l; ++i) w.push_back(gen(rng));
    int re = coef(rng), im = coef(rng);
    if (re == 0 && im == 0) re = 1;
    out += normal_order_word(alg, w, ExactScalar(re, 0, im, 0));
  }
  return out;
}

}  // namespace

TEST_CASE("PBW normal ordering: basic rewrites") {
  auto g = GradedLieAlgebra::g235();
  auto X = [&](int j) { return UEAElement::generator(g, j - 1); };

  // X2*X1 = X1X2 - X3
  UEAElement lhs = X(2) * X(1);
  UEAElement expect = X(1) * X(2) - X(3);
  CHECK(lhs == expect);

  // X1*X1 = X1^2 stays put.
  UEAElement sq = X(1) * X(1);
  CHECK(sq.term_count() == 1);
  Monomial m;
  m.e[0] = 2;
  CHECK(sq.terms().begin()->first == m);

  // (X2 X3) * X1: full PBW form = X1X2X3 - X3^2 - X2X4, checked against the
  // one-relation-at-a-time oracle.
  UEAElement prod = (X(2) * X(3)) * X(1);
  CHECK(prod == oracle_multiply(g, {1, 2}, {0}));
  UEAElement frozen = X(1) * X(2) * X(3) - X(3) * X(3) - X(2) * X(4);
  CHECK(prod == frozen);
}

TEST_CASE("PBW multiplication agrees with the oracle on random words") {
  auto g = GradedLieAlgebra::g235();
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> gen(0, 4);
  std::uniform_int_distribution<int> len(0, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> wx, wy;
    for (int i = 0, l = len(rng); i < l; ++i) wx.push_back(gen(rng));
    for (int i = 0, l = len(rng); i < l; ++i) wy.push_back(gen(rng));
    UEAElement lhs = UEAElement::word(g, wx) * UEAElement::word(g, wy);
    CHECK(lhs == oracle_multiply(g, wx, wy));
  }
}

TEST_CASE("associativity on random triples") {
  auto g = GradedLieAlgebra::g235();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    UEAElement x = random_element(g, rng, 2);
    UEAElement y = random_element(g, rng, 2);
    UEAElement z = random_element(g, rng, 2);
    CHECK((x * y) * z == x * (y * z));
  }
}

TEST_CASE("formal adjoint") {
  auto g = GradedLieAlgebra::g235();
  auto X = [&](int j) { return UEAElement::generator(g, j - 1); };

  CHECK(X(1).adjoint() == -X(1));
  // (X1X2)* = (-X2)(-X1) = X2X1 = X1X2 - X3.
  CHECK((X(1) * X(2)).adjoint() == X(1) * X(2) - X(3));
  // i scalar conjugates.
  UEAElement ix1 = X(1).scaled(ExactScalar::i());
  CHECK(ix1.adjoint() == X(1).scaled(ExactScalar::i()));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    UEAElement x = random_element(g, rng, 3);
    CHECK(x.adjoint().adjoint() == x);
  }
}

TEST_CASE("adjoint is anti-multiplicative") {
  auto g = GradedLieAlgebra::g235();
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    UEAElement x = random_element(g, rng, 2);
    UEAElement y = random_element(g, rng, 2);
    CHECK((x * y).adjoint() == y.adjoint() * x.adjoint());
  }
}

TEST_CASE("homogeneity degree") {
  auto g = GradedLieAlgebra::g235();
  auto X = [&](int j) { return UEAElement::generator(g, j - 1); };

  CHECK(X(1).homogeneity_degree() == 1);
  CHECK((X(1) * X(2) * X(3)).homogeneity_degree() == 4);
  CHECK(!(X(1) * X(2) + X(4)).homogeneity_degree().has_value());
  CHECK((X(4) * X(5)).homogeneity_degree() == 6);

  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> gen(0, 4);
    std::vector<int> wx{gen(rng), gen(rng)}, wy{gen(rng), gen(rng), gen(rng)};
    UEAElement x = UEAElement::word(g, wx);
    UEAElement y = UEAElement::word(g, wy);
    if (x.is_zero() || y.is_zero() || (x * y).is_zero()) continue;
    auto dx = x.homogeneity_degree(), dy = y.homogeneity_degree();
    REQUIRE(dx.has_value());
    REQUIRE(dy.has_value());
    CHECK((x * y).homogeneity_degree() == *dx + *dy);
  }
}

TEST_CASE("automorphism action on U(g)") {
  auto g = GradedLieAlgebra::g235();
  auto X = [&](int j) { return UEAElement::generator(g, j - 1); };
  std::mt19937 rng(23);

  auto id = extend_automorphism(g, ExactMatrix::identity(2));
  for (int trial = 0; trial < 10; ++trial) {
    UEAElement x = random_element(g, rng, 3);
    CHECK(apply_automorphism(id, x) == x);
  }

  // phi_t on a homogeneous degree-2 element scales by t^2.
  Rational t(2);
  auto phi_t = grading_automorphism(g, t);
  UEAElement x12 = X(1) * X(2);
  CHECK(apply_automorphism(phi_t, x12) == x12.scaled(ExactScalar(Rational(4))));

  // Multiplicativity against brute-force expansion both ways.
  std::uniform_int_distribution<int> num(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    ExactMatrix p(2, 2);
    do {
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) p(r, c) = ExactScalar(num(rng));
    } while ((p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0)).is_zero());
    auto phi = extend_automorphism(g, p);
    UEAElement x = random_element(g, rng, 2);
    UEAElement y = random_element(g, rng, 2);
    CHECK(apply_automorphism(phi, x * y) ==
          apply_automorphism(phi, x) * apply_automorphism(phi, y));
    // Degree preservation.
    UEAElement w = UEAElement::word(g, {0, 2});
    CHECK(apply_automorphism(phi, w).homogeneity_degree() == w.homogeneity_degree());
  }
}
