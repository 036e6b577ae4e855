#include "ksimplex/qr_update.hpp"

#include <cmath>
#include <string>

#include <Eigen/Householder>
#include <Eigen/QR>

#include "ksimplex/error.hpp"

namespace ksimplex {
namespace {

struct Givens {
  double c = 1.0;
  double s = 0.0;
};

// Rotation with [c s; -s c] (a, b)^T = (rho, 0)^T.
Givens make_givens(double a, double b) {
  if (b == 0.0) return {};
  const double rho = std::hypot(a, b);
  return {a / rho, b / rho};
}

// Applies the rotation to rows p and q of m, from column `from` on.
void rotate_rows(DenseMatrix& m, Index p, Index q, const Givens& g, Index from = 0) {
  for (Index j = from; j < m.cols(); ++j) {
    const double x = m(p, j);
    const double y = m(q, j);
    m(p, j) = g.c * x + g.s * y;
    m(q, j) = -g.s * x + g.c * y;
  }
}

// Q <- Q G^T on columns p and q.
void rotate_cols(DenseMatrix& m, Index p, Index q, const Givens& g) {
  auto cp = m.col(p);
  auto cq = m.col(q);
  for (Index i = 0; i < m.rows(); ++i) {
    const double x = cp[i];
    const double y = cq[i];
    cp[i] = g.c * x + g.s * y;
    cq[i] = -g.s * x + g.c * y;
  }
}

}  // namespace

QrFactors::QrFactors(const DenseMatrix& b, RefactorPolicy policy) : tracked_(b), policy_(policy) {
  if (b.rows() != b.cols()) throw DimensionError("qr_factor: matrix must be square");
  refactor();
  refactor_count_ = 0;
}

QrFactors qr_factor(const DenseMatrix& b, RefactorPolicy policy) { return QrFactors(b, policy); }

void QrFactors::refactor() {
  const Index s = tracked_.rows();
  if (s == 0) {
    q_.resize(0, 0);
    r_.resize(0, 0);
  } else {
    Eigen::HouseholderQR<DenseMatrix> qr(tracked_);
    q_ = qr.householderQ() * DenseMatrix::Identity(s, s);
    r_ = qr.matrixQR().triangularView<Eigen::Upper>();
  }
  update_count_ = 0;
  drift_estimate_ = 0.0;
  ++refactor_count_;
}

double QrFactors::orthogonality_error() const {
  const Index s = q_.rows();
  return (q_.transpose() * q_ - DenseMatrix::Identity(s, s)).norm();
}

void QrFactors::rank_one_update(const Vector& u, const Vector& v) {
  const Index s = size();
  if (u.size() != s || v.size() != s) throw DimensionError("qr_rank_one_update: vector length mismatch");
  if (s == 0) return;
  tracked_.noalias() += u * v.transpose();
  update_factors(u, v);
  after_update(1);
}

void QrFactors::update_factors(const Vector& u, const Vector& v) {
  const Index s = size();
  // Reduce w = Q^T u to a multiple of e_1; R turns upper Hessenberg.
  Vector w = q_.transpose() * u;
  for (Index i = s - 1; i > 0; --i) {
    const Givens g = make_givens(w[i - 1], w[i]);
    if (g.s == 0.0) continue;
    w[i - 1] = g.c * w[i - 1] + g.s * w[i];
    w[i] = 0.0;
    rotate_rows(r_, i - 1, i, g, i - 1);
    rotate_cols(q_, i - 1, i, g);
  }
  r_.row(0).noalias() += w[0] * v.transpose();

  // Restore triangular form by annihilating the subdiagonal.
  for (Index i = 0; i + 1 < s; ++i) {
    const Givens g = make_givens(r_(i, i), r_(i + 1, i));
    if (g.s == 0.0) continue;
    rotate_rows(r_, i, i + 1, g, i);
    r_(i + 1, i) = 0.0;
    rotate_cols(q_, i, i + 1, g);
  }
}

void QrFactors::replace_row(Index j, const Vector& new_row) {
  const Index s = size();
  if (j < 0 || j >= s)
    throw DimensionError("qr_replace_row: row " + std::to_string(j) + " out of range for size " +
                         std::to_string(s));
  if (new_row.size() != s) throw DimensionError("qr_replace_row: row length mismatch");
  const Vector delta = new_row - tracked_.row(j).transpose();
  update_factors(Vector::Unit(s, j), delta);
  tracked_.row(j) = new_row.transpose();
  after_update(1);
}

void QrFactors::expand(const Vector& new_col_top, const Vector& new_row) {
  const Index s = size();
  if (new_col_top.size() != s || new_row.size() != s + 1)
    throw DimensionError("qr_expand: border vector length mismatch");

  auto embed = [s](DenseMatrix& m) {
    DenseMatrix grown = DenseMatrix::Zero(s + 1, s + 1);
    grown.topLeftCorner(s, s) = m;
    grown(s, s) = 1.0;
    m = std::move(grown);
  };
  embed(q_);
  embed(r_);
  embed(tracked_);

  Vector row_delta = new_row;
  row_delta[s] -= 1.0;
  update_factors(Vector::Unit(s + 1, s), row_delta);

  Vector col = Vector::Zero(s + 1);
  col.head(s) = new_col_top;
  update_factors(col, Vector::Unit(s + 1, s));

  tracked_.row(s) = new_row.transpose();
  tracked_.col(s).head(s) = new_col_top;
  after_update(2);
}

void QrFactors::after_update(Index n) {
  update_count_ += n;
  // Orthogonality proxy: how far Q^T Q moves a fixed probe, O(s^2).
  const Index s = size();
  const Vector probe = Vector::Ones(s) / std::sqrt(static_cast<double>(s));
  drift_estimate_ = (q_.transpose() * (q_ * probe) - probe).norm();
  if (update_count_ >= policy_.max_updates || drift_estimate_ > policy_.drift_threshold) refactor();
}

void QrFactors::check_nonsingular() const {
  const Index s = size();
  const double rmax = s == 0 ? 0.0 : r_.diagonal().cwiseAbs().maxCoeff();
  for (Index i = 0; i < s; ++i) {
    if (!(std::abs(r_(i, i)) > kSingularRelTol * rmax))
      throw SingularMatrixError("singular basic matrix: |R(" + std::to_string(i) + "," + std::to_string(i) +
                                    ")| is negligible",
                                i);
  }
}

Vector QrFactors::solve(const Vector& rhs) const {
  if (rhs.size() != size()) throw DimensionError("qr_solve: rhs length mismatch");
  check_nonsingular();
  Vector x = q_.transpose() * rhs;
  r_.triangularView<Eigen::Upper>().solveInPlace(x);
  return x;
}

Vector QrFactors::solve_transpose(const Vector& rhs) const {
  if (rhs.size() != size()) throw DimensionError("qr_solve_transpose: rhs length mismatch");
  check_nonsingular();
  Vector t = rhs;
  r_.transpose().triangularView<Eigen::Lower>().solveInPlace(t);
  return q_ * t;
}

}  // namespace ksimplex
