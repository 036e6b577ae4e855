#pragma once

#include "ksimplex/types.hpp"

namespace ksimplex {

/// When to throw away the updated factors and refactorize the tracked matrix.
struct RefactorPolicy {
  Index max_updates = 64;          ///< full refactorization after this many updates
  double drift_threshold = 1e-11;  ///< or when the orthogonality proxy exceeds this
};

/// QR factors of a small dense square matrix that changes by rank-one updates.
///
/// The matrix itself is tracked alongside Q and R. Updates are O(s^2) Givens
/// sweeps; the tracked matrix is refactorized from scratch according to the
/// RefactorPolicy so that orthogonality drift stays bounded.
class QrFactors {
 public:
  QrFactors() = default;
  explicit QrFactors(const DenseMatrix& b, RefactorPolicy policy = {});

  Index size() const noexcept { return r_.rows(); }
  const DenseMatrix& q() const noexcept { return q_; }
  const DenseMatrix& r() const noexcept { return r_; }
  const DenseMatrix& tracked() const noexcept { return tracked_; }

  Index update_count() const noexcept { return update_count_; }
  Index refactor_count() const noexcept { return refactor_count_; }
  double drift_estimate() const noexcept { return drift_estimate_; }

  /// Exact ||Q^T Q - I||_F, O(s^3); for diagnostics and tests.
  double orthogonality_error() const;

  /// Q R <- Q R + u v^T.
  void rank_one_update(const Vector& u, const Vector& v);

  /// Replaces row j of the tracked matrix by `new_row`.
  void replace_row(Index j, const Vector& new_row);

  /// Grows the s x s matrix B to [[B, new_col_top], [new_row]] of size s+1.
  ///
  /// Q and R are embedded with a unit last diagonal entry; the new last row and
  /// the new last column are then brought in by two rank-one updates.
  void expand(const Vector& new_col_top, const Vector& new_row);

  /// Solves B x = rhs as R^{-1} Q^T rhs. Throws SingularMatrixError when a
  /// diagonal entry of R is tiny relative to the largest one.
  Vector solve(const Vector& rhs) const;

  /// Solves B^T x = rhs as Q R^{-T} rhs.
  Vector solve_transpose(const Vector& rhs) const;

  /// Refactorizes the tracked matrix from scratch.
  void refactor();

  static constexpr double kSingularRelTol = 1e-13;

 private:
  void update_factors(const Vector& u, const Vector& v);
  void after_update(Index n);
  void check_nonsingular() const;

  DenseMatrix q_;
  DenseMatrix r_;
  DenseMatrix tracked_;
  RefactorPolicy policy_{};
  Index update_count_ = 0;
  Index refactor_count_ = 0;
  double drift_estimate_ = 0.0;
};

QrFactors qr_factor(const DenseMatrix& b, RefactorPolicy policy = {});

}  // namespace ksimplex
