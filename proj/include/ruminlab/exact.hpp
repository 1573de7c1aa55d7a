#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace rumin {

using Rational = mpq_class;

/// Element of the field Q(sqrt2, i), stored as (a + b*sqrt2) + i*(c + d*sqrt2)
/// with exact rational components. Equality is exact; this is the coefficient
/// ring for all symbolic computations.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& v) : a_(v) {}  // NOLINT
  ExactScalar(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  static ExactScalar sqrt2() { return ExactScalar(0, 1, 0, 0); }
  static ExactScalar i() { return ExactScalar(0, 0, 1, 0); }
  static ExactScalar rational(const Rational& r) { return ExactScalar(r); }

  const Rational& re_rat() const { return a_; }
  const Rational& re_sqrt2() const { return b_; }
  const Rational& im_rat() const { return c_; }
  const Rational& im_sqrt2() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
  bool is_real() const { return c_ == 0 && d_ == 0; }
  bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }

  ExactScalar operator-() const { return ExactScalar(-a_, -b_, -c_, -d_); }
  ExactScalar conj() const { return ExactScalar(a_, b_, -c_, -d_); }

  ExactScalar& operator+=(const ExactScalar& o) {
    a_ += o.a_; b_ += o.b_; c_ += o.c_; d_ += o.d_;
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) {
    a_ -= o.a_; b_ -= o.b_; c_ -= o.c_; d_ -= o.d_;
    return *this;
  }
  ExactScalar& operator*=(const ExactScalar& o) { *this = *this * o; return *this; }

  friend ExactScalar operator+(ExactScalar x, const ExactScalar& y) { return x += y; }
  friend ExactScalar operator-(ExactScalar x, const ExactScalar& y) { return x -= y; }
  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y);

  /// Multiplicative inverse; throws on zero.
  ExactScalar inverse() const;
  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) {
    return x * y.inverse();
  }

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

  std::complex<double> to_complex() const;
  std::string str() const;

 private:
  Rational a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

/// Dense matrix over ExactScalar. Only small matrices appear (dim <= 32),
/// so the implementation favors clarity over performance.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(int n);
  static ExactMatrix zero(int rows, int cols) { return ExactMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  ExactScalar& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const ExactScalar& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  ExactMatrix transpose() const;
  ExactMatrix conj_transpose() const;
  bool is_zero() const;

  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);
  friend ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y);
  friend ExactMatrix operator-(const ExactMatrix& x, const ExactMatrix& y);
  ExactMatrix scaled(const ExactScalar& s) const;

  friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

  /// Solves A x = rhs for every column of rhs (A must be square invertible).
  ExactMatrix solve(const ExactMatrix& rhs) const;
  ExactMatrix inverse() const { return solve(identity(rows_)); }
  int rank() const;

  /// Least-squares-style projection helper: returns x with A x = rhs where A
  /// has full column rank (rhs must lie in the column span; throws otherwise).
  ExactMatrix solve_in_span(const ExactMatrix& rhs) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<ExactScalar> data_;
};

}  // namespace rumin
