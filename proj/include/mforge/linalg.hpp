#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mforge/matrix.hpp"

namespace mforge {

template <ExactField F>
struct Echelon {
  Matrix<F> reduced;            // reduced row echelon form
  std::vector<size_t> pivots;   // pivot column of each nonzero row
};

template <ExactField F>
Echelon<F> rref(Matrix<F> a) {
  Echelon<F> e;
  size_t row = 0;
  for (size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    size_t piv = row;
    while (piv < a.rows() && a(piv, c).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    F inv = a(row, c).inv();
    for (size_t j = c; j < a.cols(); ++j) a(row, j) *= inv;
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, c).is_zero()) continue;
      F factor = a(i, c);
      for (size_t j = c; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(i, j) -= factor * a(row, j);
    }
    e.pivots.push_back(c);
    ++row;
  }
  e.reduced = std::move(a);
  return e;
}

template <ExactField F>
size_t rank(const Matrix<F>& a) {
  return rref(a).pivots.size();
}

// Columns form a basis of {x : a x = 0}; free variables get unit entries.
template <ExactField F>
Matrix<F> kernel_basis(const Matrix<F>& a) {
  auto e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t c : e.pivots) is_pivot[c] = true;
  std::vector<size_t> free;
  for (size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<F> k(a.field(), a.cols(), free.size());
  for (size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = F::one(a.field());
    for (size_t i = 0; i < e.pivots.size(); ++i) k(e.pivots[i], j) = -e.reduced(i, free[j]);
  }
  return k;
}

// Some x with a x = b (free variables set to zero), or nullopt. b may have several columns.
template <ExactField F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  require_same(a.field(), b.field());
  if (a.rows() != b.rows()) throw ShapeError("solve: " + a.shape() + " against " + b.shape());
  auto e = rref(Matrix<F>::hcat(a, b));
  Matrix<F> x(a.field(), a.cols(), b.cols());
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= a.cols()) return std::nullopt;
    for (size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.reduced(i, a.cols() + j);
  }
  return x;
}

template <ExactField F>
Matrix<F> solve_or_throw(const Matrix<F>& a, const Matrix<F>& b, const char* what) {
  auto x = solve(a, b);
  if (!x) throw DomainError(std::string(what) + ": no solution");
  return *x;
}

template <ExactField F>
Matrix<F> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw ShapeError("inverse of non-square " + a.shape());
  auto e = rref(Matrix<F>::hcat(a, Matrix<F>::identity(a.field(), a.rows())));
  if (e.pivots.size() < a.rows() || (a.rows() > 0 && e.pivots.back() >= a.cols())) throw DomainError("matrix is singular");
  return e.reduced.block(0, a.cols(), a.rows(), a.cols());
}

template <ExactField F>
bool is_invertible(const Matrix<F>& a) {
  return a.rows() == a.cols() && rank(a) == a.rows();
}

// Canonical basis of the column space: transpose of the nonzero rows of rref(aᵀ).
// Two matrices span the same space iff their canonical bases are equal.
template <ExactField F>
Matrix<F> column_space(const Matrix<F>& a) {
  auto e = rref(a.transpose());
  return e.reduced.block(0, 0, e.pivots.size(), a.rows()).transpose();
}

// Sum of the column spaces of a and b.
template <ExactField F>
Matrix<F> span_sum(const Matrix<F>& a, const Matrix<F>& b) {
  return column_space(Matrix<F>::hcat(a, b));
}

template <ExactField F>
bool contains(const Matrix<F>& big, const Matrix<F>& small) {
  return rank(Matrix<F>::hcat(big, small)) == rank(big);
}

// Columns of s extended by standard basis vectors to a basis of the ambient space.
// Returns only the added columns.
template <ExactField F>
Matrix<F> complement_basis(const Matrix<F>& s) {
  size_t n = s.rows();
  auto e = rref(s.transpose());
  std::vector<bool> is_pivot(n, false);
  for (size_t c : e.pivots) is_pivot[c] = true;
  std::vector<size_t> extra;
  for (size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) extra.push_back(c);
  Matrix<F> c(s.field(), n, extra.size());
  for (size_t j = 0; j < extra.size(); ++j) c(extra[j], j) = F::one(s.field());
  return c;
}

// Quotient V/S with V = k^n. The complement C is spanned by the standard vectors
// at non-pivot positions of S; [S|C]^{-1} gives the projection as its bottom rows.
template <ExactField F>
struct Quotient {
  Matrix<F> projection;  // dim(V/S) x n, kernel exactly S
  Matrix<F> section;     // n x dim(V/S), projection * section = I
  Matrix<F> sub;         // basis of S as given (independent columns)
};

template <ExactField F>
Quotient<F> quotient_data(FieldTag f, size_t ambient, const Matrix<F>& s) {
  Matrix<F> sb = s.cols() == 0 ? Matrix<F>(f, ambient, 0) : s;
  if (sb.rows() != ambient) throw ShapeError("quotient_data: subspace lives in k^" + std::to_string(sb.rows()));
  if (rank(sb) != sb.cols()) throw DomainError("quotient_data: subspace basis is not independent");
  Matrix<F> c = complement_basis(sb);
  Matrix<F> inv = inverse(Matrix<F>::hcat(sb, c));
  return {inv.block(sb.cols(), 0, c.cols(), ambient), c, sb};
}

}  // namespace mforge
