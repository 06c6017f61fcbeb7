#pragma once

// Dense matrices over an arbitrary coefficient field.  Sizes here are desk
// scale (<= a few hundred), so plain row-major storage and cubic products are
// entirely adequate; keeping the type field-generic is what buys the exact
// arithmetic mode.

#include "topr/field.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace topr {

template <class F>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, FieldOps<F>::zero()) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = FieldOps<F>::one();
    return m;
  }
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  F& at(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  const F& at(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r = x;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& x) {
    Matrix r = x;
    for (auto& v : r.a_) v = -v;
    return r;
  }
  Matrix& operator+=(const Matrix& y) { return *this = *this + y; }
  Matrix& operator-=(const Matrix& y) { return *this = *this - y; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i) {
      for (int k = 0; k < x.cols_; ++k) {
        const F& xv = x.at(i, k);
        if (FieldOps<F>::is_zero(xv)) continue;
        for (int j = 0; j < y.cols_; ++j) r.at(i, j) += xv * y.at(k, j);
      }
    }
    return r;
  }
  friend Matrix operator*(const F& s, const Matrix& x) {
    Matrix r = x;
    for (auto& v : r.a_) v = s * v;
    return r;
  }
  Matrix& operator*=(const F& s) { return *this = s * *this; }

  F trace() const {
    assert(rows_ == cols_);
    F t = FieldOps<F>::zero();
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  // Frobenius norm reported as a double even in exact mode (for residual
  // bookkeeping; exact zero tests should use is_zero()).
  double frobenius() const {
    double s = 0;
    for (const auto& v : a_) s += FieldOps<F>::abs_sq(v);
    return std::sqrt(s);
  }
  double max_abs() const {
    double s = 0;
    for (const auto& v : a_) s = std::max(s, FieldOps<F>::abs_sq(v));
    return std::sqrt(s);
  }
  bool is_zero() const {
    for (const auto& v : a_)
      if (!FieldOps<F>::is_zero(v)) return false;
    return true;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  static void check_same_shape(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("Matrix sum: shape mismatch");
  }
  int rows_, cols_;
  std::vector<F> a_;
};

// kron(A, B)[i*p + k, j*q + l] = A[i,j] * B[k,l]  (A's index most significant).
template <class F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const F& av = a.at(i, j);
      if (FieldOps<F>::is_zero(av)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) r.at(i * b.rows() + k, j * b.cols() + l) = av * b.at(k, l);
    }
  return r;
}

template <class F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b) {
  return a * b - b * a;
}

}  // namespace topr
