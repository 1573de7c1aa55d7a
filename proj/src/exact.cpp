#include "ruminlab/exact.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace rumin {

ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
  // Real and imaginary parts live in Q(sqrt2): (p + q*sqrt2)(r + s*sqrt2)
  // = (pr + 2qs) + (ps + qr)*sqrt2, combined with i^2 = -1.
  const Rational &p = x.a_, &q = x.b_, &u = x.c_, &v = x.d_;
  const Rational &r = y.a_, &s = y.b_, &w = y.c_, &z = y.d_;
  Rational re_rat = p * r + 2 * q * s - (u * w + 2 * v * z);
  Rational re_s2 = p * s + q * r - (u * z + v * w);
  Rational im_rat = p * w + 2 * q * z + u * r + 2 * v * s;
  Rational im_s2 = p * z + q * w + u * s + v * r;
  return ExactScalar(re_rat, re_s2, im_rat, im_s2);
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("ExactScalar: division by zero");
  // 1/z = conj(z) / (z conj(z)); the denominator x^2 + y^2 lies in Q(sqrt2),
  // and 1/(p + q*sqrt2) = (p - q*sqrt2)/(p^2 - 2 q^2).
  ExactScalar den = *this * conj();  // real, in Q(sqrt2)
  const Rational& p = den.a_;
  const Rational& q = den.b_;
  Rational norm = p * p - 2 * q * q;
  if (norm == 0) throw std::domain_error("ExactScalar: inverse norm vanished");
  ExactScalar den_inv(p / norm, -q / norm, 0, 0);
  return conj() * den_inv;
}

std::complex<double> ExactScalar::to_complex() const {
  static const double s2 = std::sqrt(2.0);
  return {a_.get_d() + b_.get_d() * s2, c_.get_d() + d_.get_d() * s2};
}

std::string ExactScalar::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s) {
  bool printed = false;
  auto piece = [&](const Rational& r, const char* unit) {
    if (r == 0) return;
    if (printed && r > 0) os << "+";
    if (r == -1 && unit[0] != '\0')
      os << "-";
    else if (!(r == 1 && unit[0] != '\0'))
      os << r.get_str();
    if (unit[0] != '\0') {
      if (!(r == 1 || r == -1)) os << "*";
      os << unit;
    }
    printed = true;
  };
  piece(s.re_rat(), "");
  piece(s.re_sqrt2(), "r2");
  piece(s.im_rat(), "i");
  piece(s.im_sqrt2(), "i*r2");
  if (!printed) os << "0";
  return os;
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = ExactScalar(1);
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ExactMatrix ExactMatrix::conj_transpose() const {
  ExactMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
  return m;
}

bool ExactMatrix::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.cols_ != y.rows_) throw std::invalid_argument("ExactMatrix: shape mismatch");
  ExactMatrix m(x.rows_, y.cols_);
  for (int r = 0; r < x.rows_; ++r)
    for (int k = 0; k < x.cols_; ++k) {
      if (x(r, k).is_zero()) continue;
      for (int c = 0; c < y.cols_; ++c) m(r, c) += x(r, k) * y(k, c);
    }
  return m;
}

ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
    throw std::invalid_argument("ExactMatrix: shape mismatch");
  ExactMatrix m = x;
  for (size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += y.data_[i];
  return m;
}

ExactMatrix operator-(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
    throw std::invalid_argument("ExactMatrix: shape mismatch");
  ExactMatrix m = x;
  for (size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= y.data_[i];
  return m;
}

ExactMatrix ExactMatrix::scaled(const ExactScalar& s) const {
  ExactMatrix m = *this;
  for (auto& v : m.data_) v = v * s;
  return m;
}

namespace {

// Row-reduces [A | B] in place; returns the pivot columns of A.
std::vector<int> gauss(ExactMatrix& a, ExactMatrix& b) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int p = -1;
    for (int r = row; r < a.rows(); ++r)
      if (!a(r, col).is_zero()) { p = r; break; }
    if (p < 0) continue;
    if (p != row) {
      for (int c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(row, c));
      for (int c = 0; c < b.cols(); ++c) std::swap(b(p, c), b(row, c));
    }
    ExactScalar inv = a(row, col).inverse();
    for (int c = 0; c < a.cols(); ++c) a(row, c) = a(row, c) * inv;
    for (int c = 0; c < b.cols(); ++c) b(row, c) = b(row, c) * inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      ExactScalar f = a(r, col);
      for (int c = 0; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
      for (int c = 0; c < b.cols(); ++c) b(r, c) -= f * b(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

ExactMatrix ExactMatrix::solve(const ExactMatrix& rhs) const {
  if (rows_ != cols_) throw std::invalid_argument("ExactMatrix::solve: not square");
  if (rhs.rows() != rows_) throw std::invalid_argument("ExactMatrix::solve: rhs shape");
  ExactMatrix a = *this, b = rhs;
  auto pivots = gauss(a, b);
  if (static_cast<int>(pivots.size()) != cols_)
    throw std::domain_error("ExactMatrix::solve: singular matrix");
  return b;
}

int ExactMatrix::rank() const {
  ExactMatrix a = *this, b(rows_, 0);
  return static_cast<int>(gauss(a, b).size());
}

ExactMatrix ExactMatrix::solve_in_span(const ExactMatrix& rhs) const {
  if (rhs.rows() != rows_) throw std::invalid_argument("solve_in_span: rhs shape");
  ExactMatrix a = *this, b = rhs;
  auto pivots = gauss(a, b);
  if (static_cast<int>(pivots.size()) != cols_)
    throw std::domain_error("solve_in_span: columns not independent");
  // Rows below the pivot block must have been annihilated on the rhs side.
  for (int r = cols_; r < rows_; ++r)
    for (int c = 0; c < b.cols(); ++c)
      if (!b(r, c).is_zero()) throw std::domain_error("solve_in_span: rhs outside span");
  ExactMatrix x(cols_, rhs.cols());
  for (int r = 0; r < cols_; ++r)
    for (int c = 0; c < rhs.cols(); ++c) x(r, c) = b(r, c);
  return x;
}

}  // namespace rumin
