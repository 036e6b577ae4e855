#include "ksimplex/l1_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ksimplex/error.hpp"
#include "ksimplex/krylov.hpp"
#include "ksimplex/ratio_test.hpp"

namespace ksimplex {
namespace {

constexpr double kPivotRelTol = 1e-11;
// No Harris relaxation here: a nonbasic residual pushed past zero adds its
// overshoot to ||r||_1 and the objective would creep upward.
constexpr double kFeasRelTol = 0.0;

}  // namespace

L1Simplex::L1Simplex(Vector r0, L1Options options)
    : r0_(std::move(r0)), options_(options), av_(r0_.size()), y_(0), residual_(r0_), rhs_(0) {
  if (r0_.size() == 0) throw DimensionError("l1_init: empty residual");
  for (Index i = 1; i < r0_.size(); ++i)
    if (std::abs(r0_[i]) > std::abs(r0_[seed_])) seed_ = i;
  scale_ = std::max(std::abs(r0_[seed_]), std::numeric_limits<double>::min());
  zero_tol_ = options_.zero_rel_tol * std::abs(r0_[seed_]);
  member_.resize(static_cast<std::size_t>(r0_.size()));
  for (Index i = 0; i < r0_.size(); ++i) member_[static_cast<std::size_t>(i)] = r0_[i] < 0.0 ? -1 : 1;
}

std::vector<Index> L1Simplex::nonbasic_lower() const {
  std::vector<Index> out;
  for (Index i = 0; i < rows(); ++i)
    if (member_[static_cast<std::size_t>(i)] < 0) out.push_back(i);
  return out;
}

std::vector<Index> L1Simplex::nonbasic_upper() const {
  std::vector<Index> out;
  for (Index i = 0; i < rows(); ++i)
    if (member_[static_cast<std::size_t>(i)] > 0) out.push_back(i);
  return out;
}

DenseMatrix L1Simplex::basic_matrix() const {
  const Index k = dimension();
  DenseMatrix b(k, k);
  const auto av = av_.matrix();
  for (Index p = 0; p < k; ++p) b.row(p) = av.row(basic_[static_cast<std::size_t>(p)]);
  return b;
}

void L1Simplex::solve_primal() {
  const Index k = dimension();
  Vector rb(k);
  for (Index p = 0; p < k; ++p) rb[p] = r0_[basic_[static_cast<std::size_t>(p)]];
  y_ = qr_.solve(rb);
  refresh_residual();
}

void L1Simplex::refresh_residual() {
  residual_ = r0_;
  if (dimension() > 0) residual_.noalias() -= av_.matrix() * y_;
}

Vector L1Simplex::fresh_dual_rhs() const {
  Vector p = Vector::Zero(rows());
  for (Index i = 0; i < rows(); ++i) p[i] = static_cast<double>(member_[static_cast<std::size_t>(i)]);
  return av_.matrix().transpose() * p;
}

L1Dual L1Simplex::solve_dual() const {
  L1Dual dual;
  dual.z = qr_.solve_transpose(rhs_);
  dual.lambda = (1.0 + dual.z.array()) / 2.0;
  dual.mu = (1.0 - dual.z.array()) / 2.0;
  return dual;
}

std::optional<Index> L1Simplex::leaving_position(const L1Dual& dual, int rank) const {
  std::vector<Index> negative;
  const Vector m = dual.lambda.cwiseMin(dual.mu);
  for (Index p = 0; p < m.size(); ++p)
    if (m[p] < -options_.dual_tol) negative.push_back(p);
  std::sort(negative.begin(), negative.end(), [&](Index a, Index b) {
    if (m[a] != m[b]) return m[a] < m[b];
    return basic_[static_cast<std::size_t>(a)] < basic_[static_cast<std::size_t>(b)];
  });
  if (static_cast<Index>(negative.size()) <= rank) return std::nullopt;
  return negative[static_cast<std::size_t>(rank)];
}

void L1Simplex::update_dual_rhs(Index q, bool q_to_lower, Index r, bool r_from_lower) {
  // delta = (lambda+ - lambda) - (mu+ - mu) restricted to {q, r}.
  const double dq = q_to_lower ? 1.0 : -1.0;
  const double dr = r_from_lower ? -1.0 : 1.0;
  const auto av = av_.matrix();
  rhs_.noalias() -= dq * av.row(q).transpose() + dr * av.row(r).transpose();
}

double L1Simplex::pivot_tolerance(const Vector& slope) const { return kPivotRelTol * norm_inf(slope); }

L1Step L1Simplex::pivot(Index position) {
  const Index k = dimension();
  if (position < 0 || position >= k) throw DimensionError("l1_pivot: position out of range");
  const L1Dual dual = solve_dual();
  const bool lambda_negative = dual.lambda[position] <= dual.mu[position];
  const double rate = 2.0 * std::min(dual.lambda[position], dual.mu[position]);
  if (!(rate < 0.0))
    throw SimplexError("l1_pivot: multiplier at position " + std::to_string(position) + " is not negative");

  // lambda_q < 0: push r_q positive (q joins the upper part); mu_q < 0: push it negative.
  const Vector unit = Vector::Unit(k, position);
  const Vector d = qr_.solve(lambda_negative ? Vector(-unit) : unit);
  const Vector h = av_.matrix() * d;

  const Index q = basic_[static_cast<std::size_t>(position)];
  RatioTest test(pivot_tolerance(h), kFeasRelTol);
  for (Index i = 0; i < rows(); ++i) {
    const int mem = member_[static_cast<std::size_t>(i)];
    if (mem == 0) continue;
    test.offer(i, mem, mem * residual_[i], mem * h[i]);
  }
  const auto block = test.select();
  if (!block) throw SimplexError("l1_pivot: no nonbasic residual blocks the step (rank deficient)");

  const double before = objective();
  const double t = block->step;
  y_ += d * t;
  residual_ -= h * t;

  const Index r = block->index;
  const bool r_from_lower = member_[static_cast<std::size_t>(r)] < 0;
  const bool q_to_lower = !lambda_negative;
  member_[static_cast<std::size_t>(q)] = q_to_lower ? -1 : 1;
  member_[static_cast<std::size_t>(r)] = 0;
  basic_[static_cast<std::size_t>(position)] = r;
  update_dual_rhs(q, q_to_lower, r, r_from_lower);
  qr_.replace_row(position, av_.matrix().row(r).transpose());

  L1Step step;
  step.entering = r;
  step.alpha = t;
  step.delta_objective = objective() - before;
  step.degenerate = t == 0.0 || -step.delta_objective <= 1e-15 * scale_;
  return step;
}

L1Step L1Simplex::expand(const Vector& av_col) {
  if (av_col.size() != rows()) throw DimensionError("l1_expand_subspace: column length mismatch");
  const Index k = dimension();

  Vector a_b(k);
  for (Index p = 0; p < k; ++p) a_b[p] = av_col[basic_[static_cast<std::size_t>(p)]];
  const Vector d = qr_.solve(-a_b);
  Vector w = av_col;
  if (k > 0) w.noalias() += av_.matrix() * d;

  // d/d(alpha) of the objective is -s around alpha = 0.
  double s = 0.0;
  for (Index i = 0; i < rows(); ++i) {
    const int mem = member_[static_cast<std::size_t>(i)];
    if (mem != 0) s += mem * w[i];
  }
  const double sigma = s < 0.0 ? -1.0 : 1.0;

  RatioTest test(pivot_tolerance(w), kFeasRelTol);
  for (Index i = 0; i < rows(); ++i) {
    const int mem = member_[static_cast<std::size_t>(i)];
    if (mem == 0) continue;
    test.offer(i, mem, mem * residual_[i], sigma * mem * w[i]);
  }
  const auto block = test.select();
  if (!block) throw SimplexError("l1_expand_subspace: no nonbasic residual blocks the expansion direction");

  const double before = objective();
  const double alpha = sigma * block->step;
  y_.conservativeResize(k + 1);
  y_.head(k) += d * alpha;
  y_[k] = alpha;
  residual_ -= w * alpha;
  av_.append(av_col);

  const Index r = block->index;
  member_[static_cast<std::size_t>(r)] = 0;
  basic_.push_back(r);
  qr_.expand(a_b, av_.matrix().row(r).transpose());
  rhs_ = fresh_dual_rhs();

  L1Step step;
  step.entering = r;
  step.alpha = alpha;
  step.delta_objective = objective() - before;
  step.degenerate = alpha == 0.0;
  return step;
}

InnerOutcome L1Simplex::optimize(Index max_iters, const PivotObserver& observer) {
  InnerOutcome out;
  Index degenerate_run = 0;
  while (true) {
    if (dimension() == 0) {
      out.optimal = true;
      return out;
    }
    const L1Dual dual = solve_dual();
    std::optional<Index> pos;
    if (degenerate_run >= options_.degenerate_switch) pos = leaving_position(dual, 1);
    if (!pos) pos = leaving_position(dual, 0);
    if (!pos) {
      out.optimal = true;
      out.exact = objective() <= zero_tol_;
      return out;
    }
    if (out.iterations >= max_iters || degenerate_run >= options_.degenerate_limit) return out;

    const L1Step step = pivot(*pos);
    ++out.iterations;
    degenerate_run = step.degenerate ? degenerate_run + 1 : 0;
    if (observer) observer(step.degenerate ? SolveEvent::Degenerate : SolveEvent::Pivot, objective());
  }
}

std::pair<Vector, Vector> L1Simplex::full_multipliers(const L1Dual& dual) const {
  Vector lambda(rows());
  Vector mu(rows());
  for (Index i = 0; i < rows(); ++i) {
    const int mem = member_[static_cast<std::size_t>(i)];
    lambda[i] = mem < 0 ? 1.0 : 0.0;
    mu[i] = mem > 0 ? 1.0 : 0.0;
  }
  for (Index p = 0; p < dimension(); ++p) {
    lambda[basic_[static_cast<std::size_t>(p)]] = dual.lambda[p];
    mu[basic_[static_cast<std::size_t>(p)]] = dual.mu[p];
  }
  return {lambda, mu};
}

L1KktReport l1_kkt_report(const DenseMatrix& av, const Vector& residual, const Vector& lambda, const Vector& mu) {
  L1KktReport rep;
  rep.min_multiplier = std::min(lambda.minCoeff(), mu.minCoeff());
  rep.sum_deviation = ((lambda + mu).array() - 1.0).abs().maxCoeff();
  rep.dual_orthogonality = av.cols() == 0 ? 0.0 : norm_inf(av.transpose() * (lambda - mu));
  for (Index i = 0; i < residual.size(); ++i) {
    const double r = residual[i];
    rep.complementarity = std::max(
        {rep.complementarity, std::abs(lambda[i]) * (std::abs(r) + r), std::abs(mu[i]) * (std::abs(r) - r)});
  }
  return rep;
}

L1KktReport L1Simplex::check_kkt() const {
  const auto [lambda, mu] = full_multipliers(solve_dual());
  return l1_kkt_report(av_.matrix(), residual_, lambda, mu);
}

RunResult l1_run(const LinearOperator& op, const Vector& b, const Vector& x0, const RunOptions& options,
                 L1Options simplex_options) {
  if (b.size() != op.rows()) throw DimensionError("l1_run: rhs length must equal nrows");
  if (x0.size() != op.cols()) throw DimensionError("l1_run: x0 length must equal ncols");

  Stopwatch clock;
  RunResult result;
  const Vector z0 = op.from_solution(x0);
  const Vector r0 = b - op.apply(z0);

  L1Simplex simplex(r0, simplex_options);
  auto record = [&](Index inner, SolveEvent event) {
    result.log.push_back({simplex.dimension(), inner, simplex.objective(), event, clock.elapsed_ms()});
  };
  record(0, SolveEvent::Init);
  result.x = x0;
  result.objective = simplex.objective();
  if (result.objective <= options.tol || norm_inf(r0) == 0.0) {
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
    result.outer.push_back({simplex.dimension(), outcome.iterations, outcome.optimal, simplex.objective(),
                            norm_inf(r), norm_1(r), norm_2(r)});

    if (simplex.objective() <= options.tol) {
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
  result.objective = simplex.objective();
  Vector z = z0;
  if (result.k > 0) z.noalias() += basis.v() * simplex.y();
  result.x = op.to_solution(z);
  return result;
}

}  // namespace ksimplex
