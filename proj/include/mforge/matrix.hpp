#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mforge/field.hpp"

namespace mforge {

// Dense row-major matrix over one exact field. Vectors are single columns.
// Elements of a tensor product E⊗F use lexicographic coordinates with the left
// factor major, so a vector of E⊗F reshapes to a dim(E) x dim(F) matrix.
template <ExactField F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldTag f, size_t rows, size_t cols) : field_(f), rows_(rows), cols_(cols), data_(rows * cols, F::zero(f)) {}

  static Matrix identity(FieldTag f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = F::one(f);
    return m;
  }
  static Matrix scalar(FieldTag f, size_t n, const F& c) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }
  static Matrix from_ints(FieldTag f, size_t rows, size_t cols, const std::vector<long>& v) {
    if (v.size() != rows * cols) throw ShapeError("from_ints: wrong entry count");
    Matrix m(f, rows, cols);
    for (size_t i = 0; i < v.size(); ++i) m.data_[i] = F::from_int(f, v[i]);
    return m;
  }
  static Matrix column(FieldTag f, const std::vector<F>& v) {
    Matrix m(f, v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i) m.data_[i] = v[i];
    return m;
  }

  FieldTag field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  F& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  // Flat row-major access; for a column vector this is the coordinate index.
  F& operator[](size_t k) { return data_[k]; }
  const F& operator[](size_t k) const { return data_[k]; }
  const std::vector<F>& data() const { return data_; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_identity() const { return rows_ == cols_ && *this == identity(field_, rows_); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix& operator+=(const Matrix& o) {
    same_shape(o, "+");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    same_shape(o, "-");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  friend Matrix operator*(const F& c, Matrix a) {
    require_same(c.field(), a.field_);
    for (auto& x : a.data_) x *= c;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same(a.field_, b.field_);
    if (a.cols_ != b.rows_)
      throw ShapeError("product of " + a.shape() + " and " + b.shape());
    Matrix c(a.field_, a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const F& x = a(i, k);
        if (x.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) {
          const F& y = b(k, j);
          if (!y.is_zero()) c(i, j) += x * y;
        }
      }
    return c;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Same entries, new shape (row-major order is kept).
  Matrix reshape(size_t rows, size_t cols) const {
    if (rows * cols != data_.size()) throw ShapeError("reshape " + shape() + " to " + std::to_string(rows) + "x" + std::to_string(cols));
    Matrix r = *this;
    r.rows_ = rows;
    r.cols_ = cols;
    return r;
  }
  Matrix vec() const { return reshape(data_.size(), 1); }

  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
    Matrix b(field_, nr, nc);
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(size_t r0, size_t c0, const Matrix& b) {
    require_same(field_, b.field_);
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeError("set_block out of range");
    for (size_t i = 0; i < b.rows_; ++i)
      for (size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  Matrix col(size_t j) const { return block(0, j, rows_, 1); }
  Matrix row(size_t i) const { return block(i, 0, 1, cols_); }

  static Matrix hcat(const Matrix& a, const Matrix& b) {
    require_same(a.field_, b.field_);
    if (a.rows_ != b.rows_) throw ShapeError("hcat of " + a.shape() + " and " + b.shape());
    Matrix r(a.field_, a.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
  }
  static Matrix vcat(const Matrix& a, const Matrix& b) {
    require_same(a.field_, b.field_);
    if (a.cols_ != b.cols_) throw ShapeError("vcat of " + a.shape() + " and " + b.shape());
    Matrix r(a.field_, a.rows_ + b.rows_, a.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, 0, b);
    return r;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void same_shape(const Matrix& o, const char* op) const {
    require_same(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError(std::string("operator") + op + " on " + shape() + " and " + o.shape());
  }

  FieldTag field_{};
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<F> data_;
};

// Kronecker product: the matrix of A⊗B on lexicographic coordinates.
template <ExactField F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
  require_same(a.field(), b.field());
  Matrix<F> r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      const F& x = a(i, j);
      if (x.is_zero()) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) r(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return r;
}

// Permutation E⊗F -> F⊗E for dim E = a, dim F = b.
template <ExactField F>
Matrix<F> swap_factors(FieldTag f, size_t a, size_t b) {
  Matrix<F> s(f, a * b, a * b);
  for (size_t i = 0; i < a; ++i)
    for (size_t j = 0; j < b; ++j) s(j * a + i, i * b + j) = F::one(f);
  return s;
}

// <phi, psi>_K for phi in E⊗K (dim E x dim K) and psi in K*⊗F (dim K x dim F).
template <ExactField F>
Matrix<F> contract_pair(const Matrix<F>& phi, const Matrix<F>& psi) {
  if (phi.cols() != psi.rows()) throw ShapeError("contract_pair: K dimensions " + phi.shape() + " vs " + psi.shape());
  return phi * psi;
}

template <ExactField F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b) {
  require_same(a.field(), b.field());
  Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

}  // namespace mforge
