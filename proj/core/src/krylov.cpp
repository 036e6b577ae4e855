#include "ksimplex/krylov.hpp"

#include <algorithm>

#include "ksimplex/error.hpp"

namespace ksimplex {
namespace {

// Classical Gram-Schmidt against the columns of `basis`, applied twice.
// Returns the accumulated projection coefficients.
template <typename Basis>
Vector orthogonalize(const Basis& basis, Vector& w) {
  Vector h = basis.transpose() * w;
  w.noalias() -= basis * h;
  const Vector h2 = basis.transpose() * w;
  w.noalias() -= basis * h2;
  return h + h2;
}

}  // namespace

KrylovBasis::KrylovBasis(const LinearOperator& op, const Vector& r0)
    : op_(&op), mode_(op.is_square() ? KrylovMode::Arnoldi : KrylovMode::GolubKahan) {
  if (r0.size() != op.rows()) throw DimensionError("krylov_init: seed length must equal nrows");
  seed_norm_ = r0.norm();
  if (seed_norm_ == 0.0) throw AlreadyConvergedError("krylov_init: zero seed residual");

  v_ = ColumnStore(op.cols());
  av_ = ColumnStore(op.rows());
  if (mode_ == KrylovMode::Arnoldi) {
    v_.append(r0 / seed_norm_);
  } else {
    u_ = ColumnStore(op.rows());
    u_.append(r0 / seed_norm_);
    Vector t = op.apply_transpose(u_.col(0));
    const double alpha = t.norm();
    scale_ = alpha;
    if (alpha == 0.0) {
      breakdown_ = true;
    } else {
      alphas_.push_back(alpha);
      v_.append(t / alpha);
    }
  }
}

KrylovColumn KrylovBasis::expand() {
  if (breakdown_) throw Error("krylov_expand: basis has broken down; the search space is invariant");
  return mode_ == KrylovMode::Arnoldi ? expand_arnoldi() : expand_golub_kahan();
}

KrylovColumn KrylovBasis::expand_arnoldi() {
  const Index j = k_;
  KrylovColumn out{v_.col(j), op_->apply(v_.col(j))};
  av_.append(out.av);
  scale_ = std::max(scale_, out.av.norm());

  Vector w = out.av;
  Vector h = Vector::Zero(j + 2);
  h.head(j + 1) = orthogonalize(v_.matrix(), w);
  const double beta = w.norm();
  h[j + 1] = beta;
  hess_cols_.push_back(std::move(h));
  ++k_;

  if (beta <= kBreakdownRelTol * scale_) {
    breakdown_ = true;
  } else {
    v_.append(w / beta);
  }
  return out;
}

KrylovColumn KrylovBasis::expand_golub_kahan() {
  const Index j = k_;
  KrylovColumn out{v_.col(j), op_->apply(v_.col(j))};
  av_.append(out.av);
  scale_ = std::max(scale_, out.av.norm());
  ++k_;

  // u_{j+1} = A v_j - alpha_j u_j, re-orthogonalized against all of U.
  Vector u = out.av - alphas_[static_cast<std::size_t>(j)] * u_.col(j);
  orthogonalize(u_.matrix(), u);
  const double beta = u.norm();
  if (beta <= kBreakdownRelTol * scale_) {
    betas_.push_back(beta);
    breakdown_ = true;
    return out;
  }
  betas_.push_back(beta);
  u /= beta;
  u_.append(u);

  // v_{j+1} = A^T u_{j+1} - beta_{j+1} v_j, re-orthogonalized against all of V.
  Vector t = op_->apply_transpose(u) - beta * v_.col(j);
  scale_ = std::max(scale_, t.norm());
  orthogonalize(v_.matrix(), t);
  const double alpha = t.norm();
  if (alpha <= kBreakdownRelTol * scale_) {
    breakdown_ = true;
    return out;
  }
  alphas_.push_back(alpha);
  v_.append(t / alpha);
  return out;
}

DenseMatrix KrylovBasis::projected_matrix() const {
  DenseMatrix m = DenseMatrix::Zero(k_ + 1, k_);
  if (mode_ == KrylovMode::Arnoldi) {
    for (Index j = 0; j < k_; ++j) m.col(j).head(j + 2) = hess_cols_[static_cast<std::size_t>(j)];
  } else {
    for (Index j = 0; j < k_; ++j) {
      m(j, j) = alphas_[static_cast<std::size_t>(j)];
      m(j + 1, j) = betas_[static_cast<std::size_t>(j)];
    }
  }
  return m;
}

}  // namespace ksimplex
