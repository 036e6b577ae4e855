#include "ksimplex/preconditioner.hpp"

#include <cmath>
#include <string>

#include "ksimplex/error.hpp"

namespace ksimplex {
namespace {

// Lower-triangular part of m (including the diagonal), row by row.
SparseMatrix lower_part(const SparseMatrix& m) {
  std::vector<Index> offsets{0};
  std::vector<Index> cols;
  std::vector<double> vals;
  for (Index i = 0; i < m.rows(); ++i) {
    const auto c = m.row_cols(i);
    const auto v = m.row_values(i);
    bool has_diag = false;
    for (std::size_t p = 0; p < c.size() && c[p] <= i; ++p) {
      cols.push_back(c[p]);
      vals.push_back(v[p]);
      has_diag = has_diag || c[p] == i;
    }
    if (!has_diag) throw SingularMatrixError("build_ic0: missing diagonal entry in row " + std::to_string(i), i);
    offsets.push_back(static_cast<Index>(cols.size()));
  }
  return SparseMatrix(m.rows(), m.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

// Attempts IC(0) of pattern/values `low` with the diagonal scaled by (1 + beta).
// Returns false on a non-positive pivot.
bool try_ic0(const SparseMatrix& low, double beta, std::vector<double>& out) {
  const auto& offsets = low.row_offsets();
  const auto& cols = low.col_indices();
  out = low.values();
  for (Index i = 0; i < low.rows(); ++i) {
    const Index begin = offsets[i];
    const Index diag = offsets[i + 1] - 1;  // sorted with the diagonal last
    out[diag] *= 1.0 + beta;
    for (Index p = begin; p < diag; ++p) {
      const Index k = cols[p];
      // L_ik = (M_ik - sum_{j<k} L_ij L_kj) / L_kk over the shared pattern.
      double sum = out[p];
      Index a = begin;
      Index b = offsets[k];
      const Index b_end = offsets[k + 1] - 1;
      while (a < p && b < b_end) {
        if (cols[a] == cols[b]) {
          sum -= out[a] * out[b];
          ++a;
          ++b;
        } else if (cols[a] < cols[b]) {
          ++a;
        } else {
          ++b;
        }
      }
      out[p] = sum / out[b_end];
    }
    double d = out[diag];
    for (Index p = begin; p < diag; ++p) d -= out[p] * out[p];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    out[diag] = std::sqrt(d);
  }
  return true;
}

}  // namespace

Ic0Result build_ic0(const SparseMatrix& m, int max_shifts) {
  if (m.rows() != m.cols()) throw DimensionError("build_ic0: matrix must be square");
  const SparseMatrix low = lower_part(m);
  std::vector<double> values;
  double beta = 0.0;
  for (int attempt = 0; attempt <= max_shifts; ++attempt) {
    if (try_ic0(low, beta, values)) {
      Ic0Result res;
      res.lower = SparseMatrix(low.rows(), low.cols(), low.row_offsets(), low.col_indices(), std::move(values));
      res.shift = beta;
      res.attempts = attempt + 1;
      return res;
    }
    beta = beta == 0.0 ? 1e-3 : 2.0 * beta;
  }
  throw Error("build_ic0: factorization broke down after " + std::to_string(max_shifts) + " diagonal shifts");
}

SparseMatrix jacobi_factor(const SparseMatrix& a) {
  Vector sq = Vector::Zero(a.cols());
  for (Index c = 0; c < a.nonzeros(); ++c) {
    const double v = a.values()[static_cast<std::size_t>(c)];
    sq[a.col_indices()[static_cast<std::size_t>(c)]] += v * v;
  }
  for (Index j = 0; j < sq.size(); ++j)
    if (sq[j] == 0.0) throw SingularMatrixError("jacobi_factor: column " + std::to_string(j) + " is zero", j);
  return SparseMatrix::diagonal(sq.cwiseSqrt());
}

PrecondKind parse_precond(std::string_view name) {
  if (name == "none") return PrecondKind::None;
  if (name == "jacobi") return PrecondKind::Jacobi;
  if (name == "ic0") return PrecondKind::Ic0;
  throw Error("unknown preconditioner '" + std::string(name) + "' (expected none, jacobi or ic0)");
}

std::string_view to_string(PrecondKind kind) {
  switch (kind) {
    case PrecondKind::None: return "none";
    case PrecondKind::Jacobi: return "jacobi";
    case PrecondKind::Ic0: return "ic0";
  }
  return "unknown";
}

PreparedOperator prepare_operator(const SparseMatrix& a, PrecondKind kind) {
  PreparedOperator out;
  switch (kind) {
    case PrecondKind::None:
      out.op = std::make_unique<SparseOperator>(a);
      break;
    case PrecondKind::Jacobi:
      out.op = std::make_unique<PreconditionedOperator>(a, jacobi_factor(a), false);
      break;
    case PrecondKind::Ic0: {
      Ic0Result ic = build_ic0(gram(a));
      out.shift = ic.shift;
      out.op = std::make_unique<PreconditionedOperator>(a, std::move(ic.lower), true);
      break;
    }
  }
  return out;
}

}  // namespace ksimplex
