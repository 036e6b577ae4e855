#pragma once

#include <memory>
#include <string_view>

#include "ksimplex/linear_operator.hpp"

namespace ksimplex {

struct Ic0Result {
  SparseMatrix lower;  ///< L with L L^T ~= M + shift * diag(M)
  double shift = 0.0;  ///< diagonal shift that made the factorization succeed (0 if none)
  Index attempts = 1;
};

/// Zero-fill incomplete Cholesky of a symmetric positive definite matrix on
/// its own lower-triangular pattern. A non-positive pivot restarts the
/// factorization of M + beta * diag(M) with beta = 1e-3, 2e-3, 4e-3, ... (at
/// most `max_shifts` times).
Ic0Result build_ic0(const SparseMatrix& m, int max_shifts = 20);

/// Diagonal factor with the column 2-norms of A, i.e. sqrt(diag(A^T A)).
SparseMatrix jacobi_factor(const SparseMatrix& a);

enum class PrecondKind { None, Jacobi, Ic0 };

PrecondKind parse_precond(std::string_view name);
std::string_view to_string(PrecondKind kind);

/// Operator for a solve with the requested right preconditioner. For the
/// incomplete Cholesky factor L of A^T A the operator is A L^{-T}, so that its
/// normal matrix L^{-1} A^T A L^{-T} is close to the identity. `a` must outlive
/// the returned operator.
struct PreparedOperator {
  std::unique_ptr<LinearOperator> op;
  double shift = 0.0;
};

PreparedOperator prepare_operator(const SparseMatrix& a, PrecondKind kind);

}  // namespace ksimplex
