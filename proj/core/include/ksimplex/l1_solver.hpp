#pragma once

#include <optional>
#include <vector>

#include "ksimplex/column_store.hpp"
#include "ksimplex/linear_operator.hpp"
#include "ksimplex/qr_update.hpp"
#include "ksimplex/solver_common.hpp"

namespace ksimplex {

/// Where a row of the residual currently sits in the projected LAD problem.
enum class L1Membership : int { Lower = -1, Basic = 0, Upper = +1 };

struct L1Dual {
  Vector z;       ///< (lambda - mu) on the basic positions
  Vector lambda;  ///< (1 + z) / 2
  Vector mu;      ///< (1 - z) / 2
};

struct L1KktReport {
  double dual_orthogonality = 0.0;  ///< ||(A V_k)^T (lambda - mu)||_inf
  double min_multiplier = 0.0;
  double sum_deviation = 0.0;       ///< max_i |lambda_i + mu_i - 1|
  double complementarity = 0.0;     ///< max_i max(lambda_i (|r_i| + r_i), mu_i (|r_i| - r_i))

  bool satisfied(double tol) const {
    return dual_orthogonality <= tol && min_multiplier >= -tol && sum_deviation <= tol && complementarity <= tol;
  }
};

struct L1Step {
  Index entering = -1;
  double alpha = 0.0;           ///< signed step along the search direction
  double delta_objective = 0.0;
  bool degenerate = false;
};

struct L1Options {
  double dual_tol = 1e-10;
  double zero_rel_tol = 1e-9;   ///< |r_i| <= zero_rel_tol * ||r0||_inf counts as zero
  Index degenerate_switch = 50;
  Index degenerate_limit = 200;
};

/// Specialized primal simplex for min ||r0 - (A V_k) y||_1 over growing k.
///
/// The basic set holds k rows with zero residual and the basic matrix is
/// (A V_k) restricted to them. Nonbasic rows are split by residual sign; rows
/// with zero residual start out in the upper part. The right-hand side of the
/// dual system is kept up to date incrementally across pivots.
class L1Simplex {
 public:
  explicit L1Simplex(Vector r0, L1Options options = {});

  Index dimension() const noexcept { return av_.cols(); }
  Index rows() const noexcept { return r0_.size(); }
  const Vector& r0() const noexcept { return r0_; }
  const Vector& y() const noexcept { return y_; }
  const Vector& residual() const noexcept { return residual_; }
  double objective() const { return norm_1(residual_); }
  const std::vector<Index>& basic() const noexcept { return basic_; }
  L1Membership membership(Index i) const { return static_cast<L1Membership>(member_[static_cast<std::size_t>(i)]); }
  std::vector<Index> nonbasic_lower() const;
  std::vector<Index> nonbasic_upper() const;
  const QrFactors& qr() const noexcept { return qr_; }
  auto av() const { return av_.matrix(); }
  const Vector& dual_rhs() const noexcept { return rhs_; }
  double zero_tolerance() const noexcept { return zero_tol_; }
  /// Row of largest |r0_i| (lowest index on ties).
  Index seed_index() const noexcept { return seed_; }

  /// (A V_k) restricted to the basic rows, in position order.
  DenseMatrix basic_matrix() const;

  /// Rebuilds y from the basic equations (A V_k)|_B y = r0|_B and the residual from y.
  void solve_primal();

  /// (A V_k)^T sign(r)|_N computed from scratch.
  Vector fresh_dual_rhs() const;

  L1Dual solve_dual() const;

  /// Most negative min(lambda, mu) position below -dual_tol; `rank` 1 gives the runner-up.
  std::optional<Index> leaving_position(const L1Dual& dual, int rank = 0) const;

  /// Row q leaves the basis for the lower (q_to_lower) or upper nonbasic part
  /// and row r enters from the lower (r_from_lower) or upper part; adjusts
  /// the dual right-hand side by -(A V_k)^T delta for the matching signed
  /// combination delta of e_q and e_r.
  void update_dual_rhs(Index q, bool q_to_lower, Index r, bool r_from_lower);

  /// Removes the basic row at `position` (which must carry a negative
  /// multiplier) and brings in the first nonbasic row whose residual reaches zero.
  L1Step pivot(Index position);

  /// Adds the column A v_{k+1}, steps along the descent direction of the
  /// objective that keeps basic residuals at zero, and grows the basic set.
  L1Step expand(const Vector& av_col);

  InnerOutcome optimize(Index max_iters, const PivotObserver& observer = {});

  /// Full-length lambda, mu (nonbasic rows at their 0/1 values).
  std::pair<Vector, Vector> full_multipliers(const L1Dual& dual) const;

  L1KktReport check_kkt() const;

  void refresh_residual();

 private:
  double pivot_tolerance(const Vector& slope) const;
  double sign_of_row(Index i) const { return member_[static_cast<std::size_t>(i)] < 0 ? -1.0 : 1.0; }

  Vector r0_;
  L1Options options_;
  ColumnStore av_;
  Vector y_;
  Vector residual_;
  Vector rhs_;
  std::vector<Index> basic_;
  std::vector<int> member_;
  QrFactors qr_;
  Index seed_ = 0;
  double scale_ = 0.0;
  double zero_tol_ = 0.0;
};

L1KktReport l1_kkt_report(const DenseMatrix& av, const Vector& residual, const Vector& lambda, const Vector& mu);

/// Krylov-simplex minimization of ||b - A x||_1 over x0 + K_k.
RunResult l1_run(const LinearOperator& op, const Vector& b, const Vector& x0, const RunOptions& options,
                 L1Options simplex_options = {});

}  // namespace ksimplex
