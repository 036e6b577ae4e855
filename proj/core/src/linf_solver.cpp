#include "ksimplex/linf_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ksimplex/error.hpp"
#include "ksimplex/krylov.hpp"
#include "ksimplex/ratio_test.hpp"

namespace ksimplex {
namespace {

constexpr double kPivotRelTol = 1e-11;
constexpr double kFeasRelTol = 1e-12;

Vector with_front(double first, const Eigen::Ref<const Eigen::RowVectorXd>& rest) {
  Vector row(rest.size() + 1);
  row[0] = first;
  row.tail(rest.size()) = rest.transpose();
  return row;
}

}  // namespace

LinfSimplex::LinfSimplex(Vector r0, LinfOptions options)
    : r0_(std::move(r0)), options_(options), av_(r0_.size()), y_(0), residual_(r0_) {
  if (r0_.size() == 0) throw DimensionError("linf_init: empty residual");
  Index seed = 0;
  for (Index i = 1; i < r0_.size(); ++i)
    if (std::abs(r0_[i]) > std::abs(r0_[seed])) seed = i;
  gamma_ = std::abs(r0_[seed]);
  scale_ = std::max(gamma_, std::numeric_limits<double>::min());
  const BoundSide side = r0_[seed] < 0.0 ? BoundSide::Lower : BoundSide::Upper;
  basic_.indices = {seed};
  basic_.sides = {side};
  is_basic_.assign(static_cast<std::size_t>(r0_.size()), 0);
  is_basic_[static_cast<std::size_t>(seed)] = 1;
  qr_ = QrFactors(DenseMatrix::Constant(1, 1, sign_of(side)));
  exact_ = gamma_ == 0.0;
}

DenseMatrix LinfSimplex::basic_matrix() const {
  const Index s = basic_.size();
  DenseMatrix b(s, dimension() + 1);
  const auto av = av_.matrix();
  for (Index p = 0; p < s; ++p) {
    b(p, 0) = sign_of(basic_.sides[p]);
    b.row(p).tail(dimension()) = av.row(basic_.indices[p]);
  }
  return b;
}

double LinfSimplex::pivot_tolerance(double gamma_slope, const Vector& residual_slope) const {
  return kPivotRelTol * (std::abs(gamma_slope) + norm_inf(residual_slope));
}

std::optional<LinfStep> LinfSimplex::ratio_step(double gs, const Vector& h, Index leaving_row,
                                                BoundSide leaving_side) const {
  RatioTest test(pivot_tolerance(gs, h), kFeasRelTol * scale_);
  for (Index i = 0; i < rows(); ++i) {
    if (is_basic_[static_cast<std::size_t>(i)]) continue;
    const double r = residual_[i];
    test.offer(i, -1, r + gamma_, h[i] - gs);
    test.offer(i, +1, gamma_ - r, -h[i] - gs);
  }
  if (leaving_row >= 0) {
    const double r = residual_[leaving_row];
    if (leaving_side == BoundSide::Upper)
      test.offer(leaving_row, -1, r + gamma_, h[leaving_row] - gs);
    else
      test.offer(leaving_row, +1, gamma_ - r, -h[leaving_row] - gs);
  }

  const auto block = test.select();
  const double cap = gs < 0.0 ? gamma_ / -gs : std::numeric_limits<double>::infinity();
  if (!block && !std::isfinite(cap)) return std::nullopt;

  LinfStep step;
  double t = cap;
  if (block) {
    step.entering = block->index;
    step.side = block->side < 0 ? BoundSide::Lower : BoundSide::Upper;
    t = std::min(block->step, cap);
  }
  step.exact = t == cap;
  step.length = t;
  step.delta_gamma = step.exact ? -gamma_ : gs * t;
  step.degenerate = t == 0.0 || -step.delta_gamma <= 1e-15 * scale_;
  return step;
}

LinfStep LinfSimplex::expand(const Vector& av_col) {
  if (av_col.size() != rows()) throw DimensionError("linf_expand_subspace: column length mismatch");
  const Index k = dimension();
  const Index s = basic_.size();
  const auto av = av_.matrix();

  Vector a_b(s);
  for (Index p = 0; p < s; ++p) a_b[p] = av_col[basic_.indices[p]];
  const Vector d = qr_.solve(-a_b);
  const Vector dy = d.tail(k);
  const Vector w = av * dy + av_col;  // residual change per unit alpha, up to sign

  const double d1 = d[0];
  const bool flat = std::abs(d1) <= options_.degenerate_rel_tol * std::max(1.0, norm_inf(d));
  // Moving alpha with sign sigma changes gamma by sigma*d1 per unit; go downhill.
  const double sigma = flat ? 1.0 : (d1 > 0.0 ? -1.0 : 1.0);
  const double gs = flat ? 0.0 : sigma * d1;
  const Vector h = sigma * w;

  const auto step = ratio_step(gs, h, -1, BoundSide::Upper);
  if (!step) throw SimplexError("linf_expand_subspace: no constraint blocks the expansion direction");
  const double alpha_step = step->length;

  y_.conservativeResize(k + 1);
  y_.head(k) += sigma * dy * alpha_step;
  y_[k] = sigma * alpha_step;
  residual_ -= h * alpha_step;
  gamma_ = step->exact ? 0.0 : gamma_ + gs * alpha_step;
  av_.append(av_col);

  if (step->entering >= 0) {
    const Index r = step->entering;
    basic_.indices.push_back(r);
    basic_.sides.push_back(step->side);
    is_basic_[static_cast<std::size_t>(r)] = 1;
    qr_.expand(a_b, with_front(sign_of(step->side), av_.matrix().row(r)));
  }
  if (step->exact || gamma_ <= 0.0) {
    gamma_ = std::max(gamma_, 0.0);
    exact_ = true;
  }
  return *step;
}

LinfDual LinfSimplex::solve_dual() const {
  const Index s = basic_.size();
  const Vector w = qr_.solve_transpose(-Vector::Unit(s, 0));
  LinfDual dual{Vector::Zero(s), Vector::Zero(s)};
  for (Index p = 0; p < s; ++p) {
    if (basic_.sides[p] == BoundSide::Lower)
      dual.lambda[p] = w[p];
    else
      dual.mu[p] = -w[p];
  }
  return dual;
}

std::optional<Index> LinfSimplex::leaving_position(const LinfDual& dual, int rank) const {
  const Vector m = dual.multipliers();
  std::vector<Index> negative;
  for (Index p = 0; p < m.size(); ++p)
    if (m[p] < -options_.dual_tol) negative.push_back(p);
  std::sort(negative.begin(), negative.end(), [&](Index a, Index b) {
    if (m[a] != m[b]) return m[a] < m[b];
    return basic_.indices[a] < basic_.indices[b];
  });
  if (static_cast<Index>(negative.size()) <= rank) return std::nullopt;
  return negative[static_cast<std::size_t>(rank)];
}

LinfStep LinfSimplex::pivot(Index position) {
  const Index s = basic_.size();
  if (position < 0 || position >= s) throw DimensionError("linf_pivot: position out of range");
  const Index k = dimension();
  const BoundSide leaving_side = basic_.sides[position];
  const Index q = basic_.indices[position];
  const double sj = sign_of(leaving_side);

  const Vector d = qr_.solve(Vector::Unit(s, position));
  const double gs = sj * d[0];
  if (!(gs < 0.0))
    throw SimplexError("linf_pivot: multiplier at position " + std::to_string(position) + " is not negative");
  if (std::abs(d[0]) <= options_.degenerate_rel_tol * std::max(1.0, norm_inf(d)))
    throw SimplexError("linf_pivot: direction does not change the objective");
  const Vector dy = sj * d.tail(k);
  const Vector h = av_.matrix() * dy;

  is_basic_[static_cast<std::size_t>(q)] = 0;
  const auto step = ratio_step(gs, h, q, leaving_side);
  const double t = step->length;

  y_ += dy * t;
  residual_ -= h * t;
  gamma_ = step->exact ? 0.0 : gamma_ + gs * t;
  if (step->exact) exact_ = true;

  if (step->entering < 0) {
    // Only reachable when every other row is basic; gamma is now zero.
    is_basic_[static_cast<std::size_t>(q)] = 1;
    return *step;
  }
  const Index r = step->entering;
  basic_.indices[position] = r;
  basic_.sides[position] = step->side;
  is_basic_[static_cast<std::size_t>(r)] = 1;
  qr_.replace_row(position, with_front(sign_of(step->side), av_.matrix().row(r)));
  return *step;
}

InnerOutcome LinfSimplex::optimize(Index max_iters, const PivotObserver& observer) {
  InnerOutcome out;
  Index degenerate_run = 0;
  while (true) {
    if (exact_) {
      out.optimal = true;
      out.exact = true;
      return out;
    }
    const LinfDual dual = solve_dual();
    std::optional<Index> pos;
    if (degenerate_run >= options_.degenerate_switch) pos = leaving_position(dual, 1);
    if (!pos) pos = leaving_position(dual, 0);
    if (!pos) {
      out.optimal = true;
      return out;
    }
    if (out.iterations >= max_iters || degenerate_run >= options_.degenerate_limit) return out;

    const LinfStep step = pivot(*pos);
    ++out.iterations;
    degenerate_run = step.degenerate ? degenerate_run + 1 : 0;
    if (observer) observer(step.degenerate ? SolveEvent::Degenerate : SolveEvent::Pivot, gamma_);
  }
}

std::pair<Vector, Vector> LinfSimplex::full_multipliers(const LinfDual& dual) const {
  Vector lambda = Vector::Zero(rows());
  Vector mu = Vector::Zero(rows());
  for (Index p = 0; p < basic_.size(); ++p) {
    lambda[basic_.indices[p]] = dual.lambda[p];
    mu[basic_.indices[p]] = dual.mu[p];
  }
  return {lambda, mu};
}

LinfKktReport linf_kkt_report(const DenseMatrix& av, const Vector& residual, double gamma, const Vector& lambda,
                              const Vector& mu) {
  LinfKktReport rep;
  const Index m = residual.size();
  rep.primal_violation = -std::numeric_limits<double>::infinity();
  rep.min_multiplier = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < m; ++i) {
    const double slack = gamma - std::abs(residual[i]);
    rep.primal_violation = std::max(rep.primal_violation, -slack);
    rep.min_multiplier = std::min({rep.min_multiplier, lambda[i], mu[i]});
    rep.complementarity =
        std::max(rep.complementarity, std::min(std::abs(lambda[i]) + std::abs(mu[i]), std::abs(slack)));
  }
  rep.dual_sum_residual = std::abs(lambda.sum() + mu.sum() - 1.0);
  rep.dual_orthogonality = av.cols() == 0 ? 0.0 : norm_inf(av.transpose() * (lambda - mu));
  return rep;
}

LinfKktReport LinfSimplex::check_kkt() const {
  const auto [lambda, mu] = full_multipliers(solve_dual());
  return linf_kkt_report(av_.matrix(), residual_, gamma_, lambda, mu);
}

void LinfSimplex::refresh_residual() {
  residual_ = r0_;
  if (dimension() > 0) residual_.noalias() -= av_.matrix() * y_;
}

RunResult linf_run(const LinearOperator& op, const Vector& b, const Vector& x0, const RunOptions& options,
                   LinfOptions simplex_options) {
  if (b.size() != op.rows()) throw DimensionError("linf_run: rhs length must equal nrows");
  if (x0.size() != op.cols()) throw DimensionError("linf_run: x0 length must equal ncols");

  Stopwatch clock;
  RunResult result;
  const Vector z0 = op.from_solution(x0);
  const Vector r0 = b - op.apply(z0);

  LinfSimplex simplex(r0, simplex_options);
  auto record = [&](Index inner, SolveEvent event) {
    result.log.push_back({simplex.dimension(), inner, simplex.gamma(), event, clock.elapsed_ms()});
  };
  record(0, SolveEvent::Init);
  result.x = x0;
  result.objective = simplex.gamma();
  if (simplex.gamma() <= options.tol || simplex.exact()) {
    result.status = RunStatus::Converged;
    return result;
  }

  KrylovBasis basis(op, r0);
  result.status = RunStatus::IterationLimit;
  while (basis.dimension() < options.max_outer && !basis.breakdown()) {
    const KrylovColumn col = basis.expand();
    simplex.expand(col.av);
    record(0, SolveEvent::Expand);

    const Index remaining = options.max_inner - result.total_inner;
    const Index cap = basis.breakdown() ? remaining : std::min(options.cap_inner, remaining);
    Index inner = 0;
    const InnerOutcome outcome = simplex.optimize(cap, [&](SolveEvent e, double) { record(++inner, e); });
    result.total_inner += outcome.iterations;
    simplex.refresh_residual();
    if (outcome.optimal) record(inner, SolveEvent::Optimal);

    const Vector& r = simplex.residual();
    result.outer.push_back({simplex.dimension(), outcome.iterations, outcome.optimal, simplex.gamma(), norm_inf(r),
                            norm_1(r), norm_2(r)});

    if (simplex.gamma() <= options.tol) {
      result.status = RunStatus::Converged;
      break;
    }
    if (basis.breakdown()) {
      result.status = RunStatus::Breakdown;
      break;
    }
    if (result.total_inner >= options.max_inner) break;
  }

  result.k = simplex.dimension();
  result.objective = simplex.gamma();
  Vector z = z0;
  if (result.k > 0) z.noalias() += basis.v() * simplex.y();
  result.x = op.to_solution(z);
  return result;
}

}  // namespace ksimplex
