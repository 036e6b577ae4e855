#include "ksimplex/sparse_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ksimplex/error.hpp"

namespace ksimplex {

SparseMatrix::SparseMatrix(Index nrows, Index ncols, std::vector<Index> row_offsets,
                           std::vector<Index> col_indices, std::vector<double> values)
    : nrows_(nrows),
      ncols_(ncols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (nrows_ < 0 || ncols_ < 0) throw DimensionError("SparseMatrix: negative dimension");
  if (static_cast<Index>(row_offsets_.size()) != nrows_ + 1)
    throw DimensionError("SparseMatrix: row_offsets must have nrows+1 entries");
  if (row_offsets_.front() != 0) throw DimensionError("SparseMatrix: row_offsets must start at 0");
  if (col_indices_.size() != values_.size())
    throw DimensionError("SparseMatrix: col_indices and values differ in length");
  if (row_offsets_.back() != static_cast<Index>(values_.size()))
    throw DimensionError("SparseMatrix: last row offset must equal the number of values");
  for (Index i = 0; i < nrows_; ++i) {
    const Index begin = row_offsets_[i];
    const Index end = row_offsets_[i + 1];
    if (end < begin) throw DimensionError("SparseMatrix: row_offsets must be non-decreasing");
    for (Index p = begin; p < end; ++p) {
      const Index c = col_indices_[p];
      if (c < 0 || c >= ncols_)
        throw DimensionError("SparseMatrix: column index out of range in row " + std::to_string(i));
      if (p > begin && col_indices_[p - 1] >= c)
        throw DimensionError("SparseMatrix: column indices not strictly increasing in row " +
                             std::to_string(i));
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(Index nrows, Index ncols, std::span<const Triplet> entries) {
  if (nrows < 0 || ncols < 0) throw DimensionError("from_triplets: negative dimension");
  std::vector<Triplet> sorted(entries.begin(), entries.end());
  for (const auto& t : sorted) {
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
      throw DimensionError("from_triplets: entry (" + std::to_string(t.row) + ", " +
                           std::to_string(t.col) + ") out of range");
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  std::vector<Index> offsets(static_cast<std::size_t>(nrows) + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  cols.reserve(sorted.size());
  vals.reserve(sorted.size());
  for (std::size_t p = 0; p < sorted.size();) {
    const Triplet& t = sorted[p];
    double sum = 0.0;
    std::size_t q = p;
    for (; q < sorted.size() && sorted[q].row == t.row && sorted[q].col == t.col; ++q) sum += sorted[q].value;
    cols.push_back(t.col);
    vals.push_back(sum);
    ++offsets[static_cast<std::size_t>(t.row) + 1];
    p = q;
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return SparseMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::identity(Index n) { return diagonal(Vector::Ones(n)); }

SparseMatrix SparseMatrix::diagonal(const Vector& diag) {
  const Index n = diag.size();
  std::vector<Index> offsets(static_cast<std::size_t>(n) + 1);
  std::iota(offsets.begin(), offsets.end(), Index{0});
  std::vector<Index> cols(static_cast<std::size_t>(n));
  std::iota(cols.begin(), cols.end(), Index{0});
  std::vector<double> vals(diag.data(), diag.data() + n);
  return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense, double drop_tol) {
  std::vector<Triplet> entries;
  for (Index i = 0; i < dense.rows(); ++i)
    for (Index j = 0; j < dense.cols(); ++j)
      if (std::abs(dense(i, j)) > drop_tol) entries.push_back({i, j, dense(i, j)});
  return from_triplets(dense.rows(), dense.cols(), entries);
}

std::span<const Index> SparseMatrix::row_cols(Index i) const {
  return {col_indices_.data() + row_offsets_[i],
          static_cast<std::size_t>(row_offsets_[i + 1] - row_offsets_[i])};
}

std::span<const double> SparseMatrix::row_values(Index i) const {
  return {values_.data() + row_offsets_[i],
          static_cast<std::size_t>(row_offsets_[i + 1] - row_offsets_[i])};
}

double SparseMatrix::coeff(Index i, Index j) const {
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Index> offsets(static_cast<std::size_t>(ncols_) + 1, 0);
  for (Index c : col_indices_) ++offsets[static_cast<std::size_t>(c) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<Index> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<Index> cols(values_.size());
  std::vector<double> vals(values_.size());
  // Rows are visited in increasing order, so each transposed row comes out sorted.
  for (Index i = 0; i < nrows_; ++i) {
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      const Index dst = cursor[static_cast<std::size_t>(col_indices_[p])]++;
      cols[dst] = i;
      vals[dst] = values_[p];
    }
  }
  return SparseMatrix(ncols_, nrows_, std::move(offsets), std::move(cols), std::move(vals));
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix dense = DenseMatrix::Zero(nrows_, ncols_);
  for (Index i = 0; i < nrows_; ++i)
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) dense(i, col_indices_[p]) = values_[p];
  return dense;
}

Vector spmv(const SparseMatrix& a, const Vector& x) {
  if (x.size() != a.cols())
    throw DimensionError("spmv: vector length " + std::to_string(x.size()) + " != ncols " +
                         std::to_string(a.cols()));
  const auto& offsets = a.row_offsets();
  const auto& cols = a.col_indices();
  const auto& vals = a.values();
  Vector y(a.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (Index p = offsets[i]; p < offsets[i + 1]; ++p) sum += vals[p] * x[cols[p]];
    y[i] = sum;
  }
  return y;
}

Vector spmv_transpose(const SparseMatrix& a, const Vector& y) {
  if (y.size() != a.rows())
    throw DimensionError("spmv_transpose: vector length " + std::to_string(y.size()) + " != nrows " +
                         std::to_string(a.rows()));
  const auto& offsets = a.row_offsets();
  const auto& cols = a.col_indices();
  const auto& vals = a.values();
  Vector x = Vector::Zero(a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    const double yi = y[i];
    for (Index p = offsets[i]; p < offsets[i + 1]; ++p) x[cols[p]] += vals[p] * yi;
  }
  return x;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  std::vector<Index> offsets{0};
  std::vector<Index> cols;
  std::vector<double> vals;
  std::vector<double> accum(static_cast<std::size_t>(b.cols()), 0.0);
  std::vector<char> used(static_cast<std::size_t>(b.cols()), 0);
  std::vector<Index> pattern;
  for (Index i = 0; i < a.rows(); ++i) {
    pattern.clear();
    const auto acols = a.row_cols(i);
    const auto avals = a.row_values(i);
    for (std::size_t p = 0; p < acols.size(); ++p) {
      const auto bcols = b.row_cols(acols[p]);
      const auto bvals = b.row_values(acols[p]);
      for (std::size_t q = 0; q < bcols.size(); ++q) {
        const auto c = static_cast<std::size_t>(bcols[q]);
        if (!used[c]) {
          used[c] = 1;
          pattern.push_back(bcols[q]);
        }
        accum[c] += avals[p] * bvals[q];
      }
    }
    std::sort(pattern.begin(), pattern.end());
    for (Index c : pattern) {
      const auto uc = static_cast<std::size_t>(c);
      cols.push_back(c);
      vals.push_back(accum[uc]);
      accum[uc] = 0.0;
      used[uc] = 0;
    }
    offsets.push_back(static_cast<Index>(cols.size()));
  }
  return SparseMatrix(a.rows(), b.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix gram(const SparseMatrix& a) { return multiply(a.transpose(), a); }

Vector triangular_solve(const SparseMatrix& lower, const Vector& b, bool transposed) {
  const Index n = lower.rows();
  if (lower.cols() != n) throw DimensionError("triangular_solve: matrix is not square");
  if (b.size() != n) throw DimensionError("triangular_solve: right-hand side length mismatch");

  auto diagonal_of = [&](Index i) {
    const double d = lower.coeff(i, i);
    if (d == 0.0)
      throw SingularMatrixError("triangular_solve: zero diagonal entry at row " + std::to_string(i), i);
    return d;
  };

  Vector x = b;
  if (!transposed) {
    // Forward substitution, row-oriented.
    for (Index i = 0; i < n; ++i) {
      const auto cols = lower.row_cols(i);
      const auto vals = lower.row_values(i);
      double sum = x[i];
      for (std::size_t p = 0; p < cols.size() && cols[p] < i; ++p) sum -= vals[p] * x[cols[p]];
      x[i] = sum / diagonal_of(i);
    }
  } else {
    // Backward substitution with L^T, column-oriented over the rows of L.
    for (Index i = n - 1; i >= 0; --i) {
      x[i] /= diagonal_of(i);
      const auto cols = lower.row_cols(i);
      const auto vals = lower.row_values(i);
      for (std::size_t p = 0; p < cols.size() && cols[p] < i; ++p) x[cols[p]] -= vals[p] * x[i];
    }
  }
  return x;
}

}  // namespace ksimplex
