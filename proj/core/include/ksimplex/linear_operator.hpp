#pragma once

#include <memory>

#include "ksimplex/sparse_matrix.hpp"

namespace ksimplex {

/// Abstract real linear map with its adjoint.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  virtual Vector apply(const Vector& x) const = 0;
  virtual Vector apply_transpose(const Vector& y) const = 0;

  bool is_square() const { return rows() == cols(); }

  /// Maps a vector of the operator's domain to the original unknowns; the
  /// identity except for preconditioned operators.
  virtual Vector to_solution(const Vector& z) const { return z; }
  /// Inverse of `to_solution`.
  virtual Vector from_solution(const Vector& x) const { return x; }
};

/// Bare sparse matrix as an operator. Holds a reference; the matrix must outlive it.
class SparseOperator final : public LinearOperator {
 public:
  explicit SparseOperator(const SparseMatrix& a) : a_(&a) {}

  Index rows() const override { return a_->rows(); }
  Index cols() const override { return a_->cols(); }
  Vector apply(const Vector& x) const override { return spmv(*a_, x); }
  Vector apply_transpose(const Vector& y) const override { return spmv_transpose(*a_, y); }

  const SparseMatrix& matrix() const { return *a_; }

 private:
  const SparseMatrix* a_;
};

/// Dense matrix as an operator (mainly for tests and small experiments).
class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(DenseMatrix a) : a_(std::move(a)) {}

  Index rows() const override { return a_.rows(); }
  Index cols() const override { return a_.cols(); }
  Vector apply(const Vector& x) const override;
  Vector apply_transpose(const Vector& y) const override;

 private:
  DenseMatrix a_;
};

/// Right-preconditioned operator x -> A (T^{-1} x) with T a sparse lower-triangular
/// factor, or x -> A (T^{-T} x) when `use_transpose` is set.
///
/// The Krylov solution lives in the preconditioned variables; callers map it
/// back with `unprecondition`.
class PreconditionedOperator final : public LinearOperator {
 public:
  PreconditionedOperator(const SparseMatrix& a, SparseMatrix lower, bool use_transpose = false);

  Index rows() const override { return a_->rows(); }
  Index cols() const override { return a_->cols(); }
  Vector apply(const Vector& x) const override;
  Vector apply_transpose(const Vector& y) const override;

  /// Maps a preconditioned-space vector z to the original unknowns (T^{-1} z or T^{-T} z).
  Vector unprecondition(const Vector& z) const;

  Vector to_solution(const Vector& z) const override { return unprecondition(z); }
  /// T x or T^T x.
  Vector from_solution(const Vector& x) const override;

  const SparseMatrix& factor() const { return lower_; }
  bool uses_transpose() const { return use_transpose_; }

 private:
  const SparseMatrix* a_;
  SparseMatrix lower_;
  bool use_transpose_;
};

/// x -> A^T (A x), the square normal-equations operator.
class NormalEquationsOperator final : public LinearOperator {
 public:
  explicit NormalEquationsOperator(const LinearOperator& a) : a_(&a) {}

  Index rows() const override { return a_->cols(); }
  Index cols() const override { return a_->cols(); }
  Vector apply(const Vector& x) const override { return a_->apply_transpose(a_->apply(x)); }
  Vector apply_transpose(const Vector& y) const override { return apply(y); }

 private:
  const LinearOperator* a_;
};

/// Convenience constructor matching the free-function style of the rest of the API.
PreconditionedOperator preconditioned_operator(const SparseMatrix& a, SparseMatrix lower,
                                               bool use_transpose = false);

}  // namespace ksimplex
