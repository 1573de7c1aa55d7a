#include "ruminlab/uea.hpp"

#include <sstream>
#include <stdexcept>

namespace rumin {

UEAElement UEAElement::constant(const GradedLieAlgebra& alg, const ExactScalar& c) {
  UEAElement x(&alg);
  x.add_term(Monomial{}, c);
  return x;
}

UEAElement UEAElement::generator(const GradedLieAlgebra& alg, int j) {
  if (j < 0 || j >= alg.dim()) throw std::out_of_range("UEAElement::generator");
  UEAElement x(&alg);
  Monomial m;
  m.e[j] = 1;
  x.add_term(m, ExactScalar(1));
  return x;
}

UEAElement UEAElement::word(const GradedLieAlgebra& alg, const std::vector<int>& js) {
  return normal_order_word(alg, js, ExactScalar(1));
}

void UEAElement::add_term(const Monomial& m, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

UEAElement UEAElement::operator-() const {
  UEAElement x(alg_);
  for (const auto& [m, c] : terms_) x.terms_.emplace(m, -c);
  return x;
}

UEAElement& UEAElement::operator+=(const UEAElement& o) {
  if (!alg_) alg_ = o.alg_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& o) {
  if (!alg_) alg_ = o.alg_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

UEAElement UEAElement::scaled(const ExactScalar& s) const {
  UEAElement x(alg_);
  if (s.is_zero()) return x;
  for (const auto& [m, c] : terms_) x.terms_.emplace(m, c * s);
  return x;
}

namespace {

std::vector<int> monomial_to_word(const Monomial& m, int dim) {
  std::vector<int> w;
  w.reserve(m.total_length());
  for (int j = 0; j < dim; ++j)
    for (int r = 0; r < m.e[j]; ++r) w.push_back(j);
  return w;
}

Monomial word_to_monomial(const std::vector<int>& w) {
  Monomial m;
  for (int j : w) ++m.e[j];
  return m;
}

}  // namespace

UEAElement normal_order_word(const GradedLieAlgebra& alg, const std::vector<int>& word,
                             const ExactScalar& coeff) {
  UEAElement out(&alg);
  if (coeff.is_zero()) return out;
  // Agenda of pending words with combined coefficients. Each rewrite either
  // shortens a word (bracket term) or removes one inversion (swap term), so
  // the loop terminates; combining duplicates keeps the agenda small.
  std::map<std::vector<int>, ExactScalar> agenda;
  agenda.emplace(word, coeff);
  while (!agenda.empty()) {
    auto it = agenda.begin();
    std::vector<int> w = it->first;
    ExactScalar c = it->second;
    agenda.erase(it);
    if (c.is_zero()) continue;
    int descent = -1;
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] > w[i + 1]) { descent = static_cast<int>(i); break; }
    if (descent < 0) {
      out.add_term(word_to_monomial(w), c);
      continue;
    }
    const int a = w[descent], b = w[descent + 1];
    std::vector<int> swapped = w;
    std::swap(swapped[descent], swapped[descent + 1]);
    auto [sit, fresh] = agenda.try_emplace(std::move(swapped), c);
    if (!fresh) sit->second += c;
    for (int k = 0; k < alg.dim(); ++k) {
      const Rational& ck = alg.c(a, b, k);
      if (ck == 0) continue;
      std::vector<int> contracted;
      contracted.reserve(w.size() - 1);
      contracted.insert(contracted.end(), w.begin(), w.begin() + descent);
      contracted.push_back(k);
      contracted.insert(contracted.end(), w.begin() + descent + 2, w.end());
      ExactScalar add = c * ExactScalar(ck);
      auto [bit, bfresh] = agenda.try_emplace(std::move(contracted), add);
      if (!bfresh) bit->second += add;
    }
  }
  return out;
}

UEAElement operator*(const UEAElement& x, const UEAElement& y) {
  const GradedLieAlgebra* alg = x.algebra() ? x.algebra() : y.algebra();
  UEAElement out(alg);
  if (!alg) return out;
  for (const auto& [mx, cx] : x.terms()) {
    std::vector<int> wx = monomial_to_word(mx, alg->dim());
    for (const auto& [my, cy] : y.terms()) {
      std::vector<int> w = wx;
      std::vector<int> wy = monomial_to_word(my, alg->dim());
      w.insert(w.end(), wy.begin(), wy.end());
      out += normal_order_word(*alg, w, cx * cy);
    }
  }
  return out;
}

UEAElement UEAElement::adjoint() const {
  UEAElement out(alg_);
  if (!alg_) return out;
  for (const auto& [m, c] : terms_) {
    std::vector<int> w = monomial_to_word(m, alg_->dim());
    std::reverse(w.begin(), w.end());
    ExactScalar sign = (w.size() % 2 == 0) ? ExactScalar(1) : ExactScalar(-1);
    out += normal_order_word(*alg_, w, sign * c.conj());
  }
  return out;
}

std::optional<int> UEAElement::homogeneity_degree() const {
  std::optional<int> deg;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (int j = 0; j < alg_->dim(); ++j) d += m.e[j] * alg_->weight(j);
    if (!deg)
      deg = d;
    else if (*deg != d)
      return std::nullopt;
  }
  return deg ? deg : std::optional<int>(0);
}

std::string UEAElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    for (int j = 0; j < (alg_ ? alg_->dim() : kMaxGenerators); ++j) {
      if (m.e[j] == 0) continue;
      os << "*X" << (j + 1);
      if (m.e[j] > 1) os << "^" << m.e[j];
    }
  }
  return os.str();
}

UEAElement apply_automorphism(const GradedAutomorphism& phi, const UEAElement& x) {
  const GradedLieAlgebra& alg = *x.algebra();
  const ExactMatrix& M = phi.full_matrix;
  // Images of the generators as degree-one elements.
  std::vector<UEAElement> image(alg.dim(), UEAElement(&alg));
  for (int j = 0; j < alg.dim(); ++j) {
    for (int k = 0; k < alg.dim(); ++k) {
      if (M(k, j).is_zero()) continue;
      image[j] += UEAElement::generator(alg, k).scaled(M(k, j));
    }
  }
  UEAElement out(&alg);
  for (const auto& [m, c] : x.terms()) {
    UEAElement prod = UEAElement::constant(alg, c);
    for (int j = 0; j < alg.dim(); ++j)
      for (int r = 0; r < m.e[j]; ++r) prod = prod * image[j];
    out += prod;
  }
  return out;
}

bool OpPolyMatrix::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

OpPolyMatrix operator*(const OpPolyMatrix& x, const OpPolyMatrix& y) {
  if (x.cols_ != y.rows_) throw std::invalid_argument("OpPolyMatrix: shape mismatch");
  OpPolyMatrix m(*x.alg_, x.rows_, y.cols_);
  for (int r = 0; r < x.rows_; ++r)
    for (int k = 0; k < x.cols_; ++k) {
      if (x(r, k).is_zero()) continue;
      for (int c = 0; c < y.cols_; ++c) {
        if (y(k, c).is_zero()) continue;
        m(r, c) += x(r, k) * y(k, c);
      }
    }
  return m;
}

OpPolyMatrix operator+(const OpPolyMatrix& x, const OpPolyMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
    throw std::invalid_argument("OpPolyMatrix: shape mismatch");
  OpPolyMatrix m = x;
  for (size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += y.data_[i];
  return m;
}

OpPolyMatrix operator-(const OpPolyMatrix& x, const OpPolyMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
    throw std::invalid_argument("OpPolyMatrix: shape mismatch");
  OpPolyMatrix m = x;
  for (size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= y.data_[i];
  return m;
}

OpPolyMatrix OpPolyMatrix::scaled(const ExactScalar& s) const {
  OpPolyMatrix m = *this;
  for (auto& v : m.data_) v = v.scaled(s);
  return m;
}

OpPolyMatrix OpPolyMatrix::power(int k) const {
  if (rows_ != cols_) throw std::invalid_argument("OpPolyMatrix::power: not square");
  if (k < 1) throw std::invalid_argument("OpPolyMatrix::power: k >= 1 required");
  OpPolyMatrix acc = *this;
  for (int i = 1; i < k; ++i) acc = acc * (*this);
  return acc;
}

OpPolyMatrix OpPolyMatrix::adjoint() const {
  OpPolyMatrix m(*alg_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).adjoint();
  return m;
}

OpPolyMatrix OpPolyMatrix::left_mul(const ExactMatrix& s) const {
  if (s.cols() != rows_) throw std::invalid_argument("left_mul: shape mismatch");
  OpPolyMatrix m(*alg_, s.rows(), cols_);
  for (int r = 0; r < s.rows(); ++r)
    for (int k = 0; k < rows_; ++k) {
      if (s(r, k).is_zero()) continue;
      for (int c = 0; c < cols_; ++c) m(r, c) += (*this)(k, c).scaled(s(r, k));
    }
  return m;
}

OpPolyMatrix OpPolyMatrix::right_mul(const ExactMatrix& s) const {
  if (cols_ != s.rows()) throw std::invalid_argument("right_mul: shape mismatch");
  OpPolyMatrix m(*alg_, rows_, s.cols());
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      if ((*this)(r, k).is_zero()) continue;
      for (int c = 0; c < s.cols(); ++c) m(r, c) += (*this)(r, k).scaled(s(k, c));
    }
  return m;
}

std::optional<int> OpPolyMatrix::homogeneity_degree() const {
  std::optional<int> deg;
  for (const auto& v : data_) {
    if (v.is_zero()) continue;
    auto d = v.homogeneity_degree();
    if (!d) return std::nullopt;
    if (!deg)
      deg = d;
    else if (*deg != *d)
      return std::nullopt;
  }
  return deg;
}

OpPolyMatrix OpPolyMatrix::apply(const GradedAutomorphism& phi) const {
  OpPolyMatrix m = *this;
  for (auto& v : m.data_) v = apply_automorphism(phi, v);
  return m;
}

}  // namespace rumin
