#include "ksimplex/lp_oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/LU>
#include <Eigen/QR>

#include "ksimplex/error.hpp"

namespace ksimplex {
namespace {

// Calls f(subset) for every increasing index tuple of the given size drawn from [0, n).
template <typename F>
void for_each_subset(Index n, Index size, F&& f) {
  std::vector<Index> idx(static_cast<std::size_t>(size));
  for (Index i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (size > n) return;
  while (true) {
    f(idx);
    Index i = size - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

DenseMatrix rows_of(const DenseMatrix& m, const std::vector<Index>& idx) {
  DenseMatrix out(static_cast<Index>(idx.size()), m.cols());
  for (std::size_t p = 0; p < idx.size(); ++p) out.row(static_cast<Index>(p)) = m.row(idx[p]);
  return out;
}

Vector entries_of(const Vector& v, const std::vector<Index>& idx) {
  Vector out(static_cast<Index>(idx.size()));
  for (std::size_t p = 0; p < idx.size(); ++p) out[static_cast<Index>(p)] = v[idx[p]];
  return out;
}

void check_inputs(const DenseMatrix& av, const Vector& r0, Index max_cols, Index extra_rows, const char* who,
                  const OracleBudget& budget) {
  if (av.rows() != r0.size()) throw DimensionError(std::string(who) + ": AV rows must equal length of r0");
  if (av.rows() > budget.max_rows || av.cols() > max_cols)
    throw OracleError(std::string(who) + ": problem exceeds the enumeration budget");
  if (av.cols() + extra_rows > av.rows()) throw OracleError(std::string(who) + ": too few rows for the column count");
}

}  // namespace

OracleResult oracle_projected_linf(const DenseMatrix& av, const Vector& r0, OracleBudget budget) {
  check_inputs(av, r0, budget.max_linf_cols, 1, "oracle_projected_linf", budget);
  const Index m = av.rows();
  const Index k = av.cols();
  const double scale = std::max(1.0, norm_inf(r0));

  struct Reference {
    std::vector<Index> rows;
    Vector c;
    double gamma;
  };
  std::vector<Reference> refs;
  OracleResult result;
  double best = -1.0;

  for_each_subset(m, k + 1, [&](const std::vector<Index>& s) {
    ++result.subsets;
    const DenseMatrix sub = rows_of(av, s);
    Vector c;
    if (k == 0) {
      c = Vector::Ones(1);
    } else {
      Eigen::HouseholderQR<DenseMatrix> qr(sub);
      const DenseMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
      const double rmax = r.diagonal().cwiseAbs().maxCoeff();
      if (!(r.diagonal().cwiseAbs().minCoeff() > 1e-10 * rmax)) return;  // null space not one-dimensional
      c = qr.householderQ() * Vector::Unit(k + 1, k);
    }
    const double gamma = std::abs(c.dot(entries_of(r0, s))) / c.lpNorm<1>();
    if (gamma > best * (1.0 + 1e-12)) refs.clear();
    if (gamma >= best * (1.0 - 1e-10)) refs.push_back({s, c, gamma});
    best = std::max(best, gamma);
  });
  if (refs.empty()) throw OracleError("oracle_projected_linf: no reference with a one-dimensional null space");

  // Primal side: the reference attaining the maximum must yield a feasible basic solution.
  for (const auto& ref : refs) {
    if (ref.gamma < best * (1.0 - 1e-10)) continue;
    const Vector rs = entries_of(r0, ref.rows);
    const double orient = ref.c.dot(rs) < 0.0 ? -1.0 : 1.0;
    Vector sides(k + 1);
    for (Index p = 0; p <= k; ++p) sides[p] = orient * (ref.c[p] < 0.0 ? -1.0 : 1.0);
    Vector y = Vector::Zero(k);
    if (k > 0) y = rows_of(av, ref.rows).householderQr().solve(rs - sides * ref.gamma);
    const Vector r = r0 - av * y;
    if (norm_inf(r) <= ref.gamma + 1e-9 * scale) {
      result.objective = ref.gamma;
      result.y = y;
      return result;
    }
  }
  throw OracleError("oracle_projected_linf: best reference has no feasible basic solution (degenerate data)");
}

OracleResult oracle_projected_l1(const DenseMatrix& av, const Vector& r0, OracleBudget budget) {
  check_inputs(av, r0, budget.max_l1_cols, 0, "oracle_projected_l1", budget);
  const Index k = av.cols();
  OracleResult result;
  result.objective = std::numeric_limits<double>::infinity();
  if (k == 0) {
    result.objective = norm_1(r0);
    result.y = Vector(0);
    result.subsets = 1;
    return result;
  }
  for_each_subset(av.rows(), k, [&](const std::vector<Index>& s) {
    ++result.subsets;
    Eigen::FullPivLU<DenseMatrix> lu(rows_of(av, s));
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return;
    const Vector y = lu.solve(entries_of(r0, s));
    const double obj = norm_1(r0 - av * y);
    if (obj < result.objective) {
      result.objective = obj;
      result.y = y;
    }
  });
  if (!std::isfinite(result.objective)) throw OracleError("oracle_projected_l1: every row subset is singular");
  return result;
}

}  // namespace ksimplex
