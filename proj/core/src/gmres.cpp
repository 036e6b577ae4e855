#include "ksimplex/gmres.hpp"

#include <cmath>

#include "ksimplex/error.hpp"
#include "ksimplex/krylov.hpp"

namespace ksimplex {
namespace {

// Least-squares solve of min ||beta e_1 - H y|| updated one column at a time.
class GivensLeastSquares {
 public:
  explicit GivensLeastSquares(double beta) : g_(Vector::Zero(1)) { g_[0] = beta; }

  void add_column(Vector h) {
    const Index j = static_cast<Index>(c_.size());
    for (Index i = 0; i < j; ++i) {
      const double a = h[i];
      const double b = h[i + 1];
      h[i] = c_[i] * a + s_[i] * b;
      h[i + 1] = -s_[i] * a + c_[i] * b;
    }
    const double rho = std::hypot(h[j], h[j + 1]);
    const double c = rho == 0.0 ? 1.0 : h[j] / rho;
    const double s = rho == 0.0 ? 0.0 : h[j + 1] / rho;
    c_.push_back(c);
    s_.push_back(s);
    h[j] = rho;
    r_.conservativeResize(j + 1, j + 1);
    r_.row(j).setZero();
    r_.col(j) = h.head(j + 1);
    g_.conservativeResize(j + 2);
    g_[j + 1] = -s * g_[j];
    g_[j] = c * g_[j];
  }

  Vector solve() const {
    const Index k = r_.cols();
    Vector y = g_.head(k);
    r_.triangularView<Eigen::Upper>().solveInPlace(y);
    return y;
  }

 private:
  std::vector<double> c_;
  std::vector<double> s_;
  DenseMatrix r_;
  Vector g_;
};

void record(GmresTrace& trace, const Vector& r) {
  trace.residual_2norms.push_back(norm_2(r));
  trace.residual_infnorms.push_back(norm_inf(r));
  trace.residual_1norms.push_back(norm_1(r));
}

}  // namespace

GmresTrace gmres_run(const LinearOperator& op, const Vector& b, const Vector& x0, Index max_k, bool keep_solutions) {
  if (!op.is_square()) throw DimensionError("gmres_run: operator must be square");
  if (b.size() != op.rows() || x0.size() != op.cols()) throw DimensionError("gmres_run: vector length mismatch");

  GmresTrace trace;
  const Vector z0 = op.from_solution(x0);
  const Vector r0 = b - op.apply(z0);
  record(trace, r0);
  if (keep_solutions) trace.solutions.push_back(x0);
  if (norm_2(r0) == 0.0) return trace;

  KrylovBasis basis(op, r0);
  GivensLeastSquares ls(basis.seed_norm());
  while (basis.dimension() < max_k && !basis.breakdown()) {
    basis.expand();
    const Index k = basis.dimension();
    ls.add_column(basis.projected_matrix().col(k - 1));
    const Vector y = ls.solve();
    record(trace, r0 - basis.av() * y);
    if (keep_solutions) trace.solutions.push_back(op.to_solution(z0 + basis.v() * y));
  }
  trace.breakdown = basis.breakdown();
  return trace;
}

GmresTrace gmres_normal_equations(const LinearOperator& op, const Vector& b, const Vector& x0, Index max_k,
                                  bool keep_solutions) {
  if (b.size() != op.rows() || x0.size() != op.cols())
    throw DimensionError("gmres_normal_equations: vector length mismatch");

  GmresTrace trace;
  const Vector z0 = op.from_solution(x0);
  const Vector r0 = b - op.apply(z0);
  const Vector s0 = op.apply_transpose(r0);
  record(trace, r0);
  trace.normal_residual_2norms.push_back(norm_2(s0));
  if (keep_solutions) trace.solutions.push_back(x0);
  if (norm_2(s0) == 0.0) return trace;

  const NormalEquationsOperator normal(op);
  KrylovBasis basis(normal, s0);
  GivensLeastSquares ls(basis.seed_norm());
  while (basis.dimension() < max_k && !basis.breakdown()) {
    basis.expand();
    const Index k = basis.dimension();
    ls.add_column(basis.projected_matrix().col(k - 1));
    const Vector y = ls.solve();
    const Vector step = basis.v() * y;
    const Vector r = r0 - op.apply(step);
    record(trace, r);
    trace.normal_residual_2norms.push_back(norm_2(s0 - basis.av() * y));
    if (keep_solutions) trace.solutions.push_back(op.to_solution(z0 + step));
  }
  trace.breakdown = basis.breakdown();
  return trace;
}

}  // namespace ksimplex
