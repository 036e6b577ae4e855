#pragma once

#include <vector>

#include "ksimplex/column_store.hpp"
#include "ksimplex/linear_operator.hpp"

namespace ksimplex {

enum class KrylovMode { Arnoldi, GolubKahan };

/// One new basis direction v_k together with the cached product A v_k.
struct KrylovColumn {
  Vector v;
  Vector av;
};

/// Orthonormal Krylov basis with cached operator products.
///
/// Square operators use Arnoldi (A V_k = V_{k+1} H_{k+1,k}); rectangular ones
/// use Golub-Kahan bidiagonalization (A V_k = U_{k+1} B_{k+1,k}, with alpha_j on
/// the diagonal and beta_{j+1} below it). Both recurrences apply one full
/// re-orthogonalization pass per step.
class KrylovBasis {
 public:
  static constexpr double kBreakdownRelTol = 1e-12;

  /// Primes the basis with the normalized seed. Throws AlreadyConvergedError for r0 = 0.
  KrylovBasis(const LinearOperator& op, const Vector& r0);

  KrylovMode mode() const noexcept { return mode_; }
  Index dimension() const noexcept { return k_; }
  double seed_norm() const noexcept { return seed_norm_; }

  /// True once the next direction is (numerically) inside the current span.
  bool breakdown() const noexcept { return breakdown_; }

  /// Appends v_{k+1} and A v_{k+1}. Must not be called after breakdown.
  KrylovColumn expand();

  /// V_k, the basis of the current search space (n x k).
  auto v() const { return v_.matrix().leftCols(k_); }
  /// Every stored V column, including the pending next direction when present.
  auto v_all() const { return v_.matrix(); }
  /// A V_k (m x k).
  auto av() const { return av_.matrix(); }
  /// U_{k+1} for Golub-Kahan (m x (k+1), fewer after breakdown).
  auto u() const { return u_.matrix(); }

  /// H_{k+1,k} (Arnoldi) or B_{k+1,k} (Golub-Kahan).
  DenseMatrix projected_matrix() const;

  const std::vector<double>& alphas() const noexcept { return alphas_; }
  const std::vector<double>& betas() const noexcept { return betas_; }

 private:
  KrylovColumn expand_arnoldi();
  KrylovColumn expand_golub_kahan();

  const LinearOperator* op_;
  KrylovMode mode_;
  Index k_ = 0;
  double seed_norm_ = 0.0;
  double scale_ = 0.0;
  bool breakdown_ = false;

  ColumnStore v_;
  ColumnStore av_;
  ColumnStore u_;
  std::vector<Vector> hess_cols_;  // column j holds H(0..j+1, j)
  std::vector<double> alphas_;     // alpha_1..alpha_{k(+1)}
  std::vector<double> betas_;      // beta_2..beta_{k+1}
};

}  // namespace ksimplex
