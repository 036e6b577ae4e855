#pragma once

#include <optional>
#include <vector>

#include "ksimplex/column_store.hpp"
#include "ksimplex/linear_operator.hpp"
#include "ksimplex/qr_update.hpp"
#include "ksimplex/solver_common.hpp"

namespace ksimplex {

/// Which bound of |r_i| <= gamma is active: Lower means r_i = -gamma, Upper r_i = +gamma.
/// The numeric value is the entry of the basic matrix's first column.
enum class BoundSide : int { Lower = -1, Upper = +1 };

inline double sign_of(BoundSide s) { return static_cast<double>(static_cast<int>(s)); }
inline BoundSide flipped(BoundSide s) { return s == BoundSide::Lower ? BoundSide::Upper : BoundSide::Lower; }

/// Active constraints of the projected minimax LP, in basic-matrix row order.
struct LinfBasicSet {
  std::vector<Index> indices;
  std::vector<BoundSide> sides;

  Index size() const { return static_cast<Index>(indices.size()); }
};

/// Lagrange multipliers on the basic positions (zero elsewhere by complementarity).
struct LinfDual {
  Vector lambda;  ///< lower-bound multipliers; zero at upper-tagged positions
  Vector mu;      ///< upper-bound multipliers; zero at lower-tagged positions

  /// Signed multiplier of each basic position (lambda for lower, mu for upper).
  Vector multipliers() const { return lambda + mu; }
};

struct LinfKktReport {
  double primal_violation = 0.0;   ///< max(|r_i| - gamma), <= 0 when feasible
  double dual_sum_residual = 0.0;  ///< |1^T (lambda + mu) - 1|
  double dual_orthogonality = 0.0; ///< ||(A V_k)^T (lambda - mu)||_inf
  double min_multiplier = 0.0;
  double complementarity = 0.0;    ///< max_i min(lambda_i + mu_i, gamma - |r_i|)

  bool satisfied(double tol) const {
    return primal_violation <= tol && dual_sum_residual <= tol && dual_orthogonality <= tol &&
           min_multiplier >= -tol && complementarity <= tol;
  }
};

/// Result of one simplex step (pivot or expansion).
struct LinfStep {
  Index entering = -1;            ///< row that became active (-1 when none)
  BoundSide side = BoundSide::Upper;
  double delta_gamma = 0.0;       ///< change of the objective (<= 0)
  double length = 0.0;            ///< step length along the search direction
  bool degenerate = false;        ///< zero step
  bool exact = false;             ///< gamma reached zero
};

struct LinfOptions {
  double dual_tol = 1e-10;        ///< a multiplier below -dual_tol is negative
  double degenerate_rel_tol = 1e-13;
  Index degenerate_switch = 50;   ///< consecutive degenerate pivots before using the 2nd candidate
  Index degenerate_limit = 200;   ///< consecutive degenerate pivots before forcing expansion
};

/// Specialized primal simplex for min ||r0 - (A V_k) y||_inf over growing k.
///
/// The basic matrix row for active row i with side s is (s, (A V_k)_i); the
/// primal system B (gamma, y) = r0|_B then pins r_i = s * gamma. Rows are
/// replaced in place on pivots and the matrix is bordered on expansions, and
/// its QR factors are maintained by updates only.
class LinfSimplex {
 public:
  /// Seeds the basic set with the row of largest |r0_i| (lowest index on ties).
  explicit LinfSimplex(Vector r0, LinfOptions options = {});

  Index dimension() const noexcept { return av_.cols(); }
  Index rows() const noexcept { return r0_.size(); }
  double gamma() const noexcept { return gamma_; }
  const Vector& y() const noexcept { return y_; }
  const Vector& residual() const noexcept { return residual_; }
  const Vector& r0() const noexcept { return r0_; }
  const LinfBasicSet& basic() const noexcept { return basic_; }
  const QrFactors& qr() const noexcept { return qr_; }
  auto av() const { return av_.matrix(); }
  bool exact() const noexcept { return exact_; }

  /// Explicit basic matrix for the current basic set.
  DenseMatrix basic_matrix() const;

  /// Adds the column A v_{k+1}: moves along the one-dimensional feasible
  /// direction that keeps the current active rows active until another row
  /// blocks, and grows the basic set by that row.
  LinfStep expand(const Vector& av_col);

  /// Solves B^T w = (-1, 0, ..., 0) and unpacks the multipliers.
  LinfDual solve_dual() const;

  /// Most negative multiplier position below -dual_tol; `rank` 1 gives the second most negative.
  std::optional<Index> leaving_position(const LinfDual& dual, int rank = 0) const;

  /// Drops the constraint at basic position `position` (whose multiplier must
  /// be negative) and brings in the first blocking row.
  LinfStep pivot(Index position);

  /// Pivots until dual feasible, `max_iters` is reached, or the degenerate limit forces expansion.
  InnerOutcome optimize(Index max_iters, const PivotObserver& observer = {});

  /// Full-length multipliers (zero on nonbasic rows).
  std::pair<Vector, Vector> full_multipliers(const LinfDual& dual) const;

  LinfKktReport check_kkt() const;

  /// Recomputes the residual from y to remove accumulated update drift.
  void refresh_residual();

 private:
  std::optional<LinfStep> ratio_step(double gamma_slope, const Vector& residual_slope, Index leaving_row,
                                     BoundSide leaving_side) const;
  double pivot_tolerance(double gamma_slope, const Vector& residual_slope) const;

  Vector r0_;
  LinfOptions options_;
  ColumnStore av_;
  Vector y_;
  Vector residual_;
  double gamma_ = 0.0;
  double scale_ = 0.0;
  LinfBasicSet basic_;
  std::vector<char> is_basic_;
  QrFactors qr_;
  bool exact_ = false;
};

LinfKktReport linf_kkt_report(const DenseMatrix& av, const Vector& residual, double gamma, const Vector& lambda,
                              const Vector& mu);

/// Krylov-simplex minimization of ||b - A x||_inf over x0 + K_k.
RunResult linf_run(const LinearOperator& op, const Vector& b, const Vector& x0, const RunOptions& options,
                   LinfOptions simplex_options = {});

}  // namespace ksimplex
