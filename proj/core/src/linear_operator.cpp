#include "ksimplex/linear_operator.hpp"

#include "ksimplex/error.hpp"

namespace ksimplex {

Vector DenseOperator::apply(const Vector& x) const {
  if (x.size() != a_.cols()) throw DimensionError("DenseOperator::apply: length mismatch");
  return a_ * x;
}

Vector DenseOperator::apply_transpose(const Vector& y) const {
  if (y.size() != a_.rows()) throw DimensionError("DenseOperator::apply_transpose: length mismatch");
  return a_.transpose() * y;
}

PreconditionedOperator::PreconditionedOperator(const SparseMatrix& a, SparseMatrix lower, bool use_transpose)
    : a_(&a), lower_(std::move(lower)), use_transpose_(use_transpose) {
  if (lower_.rows() != lower_.cols() || lower_.rows() != a.cols())
    throw DimensionError("PreconditionedOperator: factor must be square with ncols(A) rows");
}

Vector PreconditionedOperator::unprecondition(const Vector& z) const {
  return triangular_solve(lower_, z, use_transpose_);
}

Vector PreconditionedOperator::from_solution(const Vector& x) const {
  return use_transpose_ ? spmv_transpose(lower_, x) : spmv(lower_, x);
}

Vector PreconditionedOperator::apply(const Vector& x) const { return spmv(*a_, unprecondition(x)); }

Vector PreconditionedOperator::apply_transpose(const Vector& y) const {
  // (A T^{-1})^T = T^{-T} A^T, and (A T^{-T})^T = T^{-1} A^T.
  return triangular_solve(lower_, spmv_transpose(*a_, y), !use_transpose_);
}

PreconditionedOperator preconditioned_operator(const SparseMatrix& a, SparseMatrix lower, bool use_transpose) {
  return PreconditionedOperator(a, std::move(lower), use_transpose);
}

}  // namespace ksimplex
