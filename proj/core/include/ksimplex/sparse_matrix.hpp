#pragma once

#include <span>
#include <vector>

#include "ksimplex/types.hpp"

namespace ksimplex {

/// Coordinate entry used to assemble a SparseMatrix.
struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed-row sparse matrix.
///
/// Column indices are strictly increasing within each row. The matrix is
/// immutable once constructed; use `from_triplets` to assemble one from
/// unordered entries (duplicates are summed).
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Takes ownership of raw CSR arrays after validating every structural invariant.
  SparseMatrix(Index nrows, Index ncols, std::vector<Index> row_offsets,
               std::vector<Index> col_indices, std::vector<double> values);

  static SparseMatrix from_triplets(Index nrows, Index ncols, std::span<const Triplet> entries);
  static SparseMatrix identity(Index n);
  static SparseMatrix diagonal(const Vector& diag);
  static SparseMatrix from_dense(const DenseMatrix& dense, double drop_tol = 0.0);

  Index rows() const noexcept { return nrows_; }
  Index cols() const noexcept { return ncols_; }
  Index nonzeros() const noexcept { return static_cast<Index>(values_.size()); }

  const std::vector<Index>& row_offsets() const noexcept { return row_offsets_; }
  const std::vector<Index>& col_indices() const noexcept { return col_indices_; }
  const std::vector<double>& values() const noexcept { return values_; }

  std::span<const Index> row_cols(Index i) const;
  std::span<const double> row_values(Index i) const;

  /// Stored value at (i, j), or zero.
  double coeff(Index i, Index j) const;

  SparseMatrix transpose() const;
  DenseMatrix to_dense() const;

  bool operator==(const SparseMatrix& other) const = default;

 private:
  Index nrows_ = 0;
  Index ncols_ = 0;
  std::vector<Index> row_offsets_{0};
  std::vector<Index> col_indices_;
  std::vector<double> values_;
};

/// y = A x.
Vector spmv(const SparseMatrix& a, const Vector& x);

/// y = A^T x, computed row-wise without forming the transpose.
Vector spmv_transpose(const SparseMatrix& a, const Vector& y);

/// Sparse product A * B.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// A^T A, the normal-equations matrix.
SparseMatrix gram(const SparseMatrix& a);

/// Solves L x = b (or L^T x = b) for lower-triangular L.
///
/// Entries above the diagonal are ignored. Throws SingularMatrixError with the
/// offending row when a diagonal entry is zero or missing.
Vector triangular_solve(const SparseMatrix& lower, const Vector& b, bool transposed = false);

}  // namespace ksimplex
