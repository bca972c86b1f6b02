#pragma once

#include <cstdint>
#include <vector>

#include "mforge/linalg.hpp"

namespace mforge {

// Subspace of k^ambient given by independent columns.
template <ExactField F>
struct Subspace {
  size_t ambient = 0;
  Matrix<F> basis;

  size_t dim() const { return basis.cols(); }
  static Subspace zero(FieldTag f, size_t n) { return {n, Matrix<F>(f, n, 0)}; }
  static Subspace full(FieldTag f, size_t n) { return {n, Matrix<F>::identity(f, n)}; }
  static Subspace spanned_by(const Matrix<F>& cols) { return {cols.rows(), column_space(cols)}; }
};

// Number of d-dimensional subspaces of GF(q)^n, saturating at UINT64_MAX.
uint64_t gaussian_binomial(uint64_t q, unsigned n, unsigned d);

// d-dimensional subspaces of GF(q)^n indexed 0..count-1 in a fixed order.
// Each representative is in reduced column echelon form (its transpose is in
// reduced row echelon form), so it is canonical.
class SubspaceIndex {
 public:
  SubspaceIndex(FieldTag f, unsigned n, unsigned d, uint64_t budget);

  uint64_t count() const { return total_; }
  Matrix<ModP> at(uint64_t index) const;

 private:
  struct Shape {
    std::vector<unsigned> pivots;
    std::vector<std::pair<unsigned, unsigned>> free;  // (basis vector, coordinate)
    uint64_t offset = 0;
    uint64_t count = 0;
  };
  FieldTag field_;
  unsigned n_, d_;
  std::vector<Shape> shapes_;
  uint64_t total_ = 0;
};

std::vector<Matrix<ModP>> enumerate_subspaces(FieldTag f, unsigned n, unsigned d, uint64_t budget);

// Every subspace of GF(q)^n, all dimensions, ordered by dimension then index.
std::vector<Matrix<ModP>> enumerate_all_subspaces(FieldTag f, unsigned n, uint64_t budget);

// All vectors of GF(q)^n as columns, index i giving base-q digits (first coordinate most significant).
Matrix<ModP> vector_from_index(FieldTag f, unsigned n, uint64_t index);
uint64_t checked_power(uint64_t q, unsigned n, uint64_t budget, const char* what);

}  // namespace mforge
