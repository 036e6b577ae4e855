#pragma once

#include <vector>

#include "ksimplex/linear_operator.hpp"

namespace ksimplex {

/// Residual history of an l2-optimal Krylov run. Entry k of each sequence
/// belongs to the k-dimensional search space (entry 0 is the initial residual).
struct GmresTrace {
  std::vector<double> residual_2norms;
  std::vector<double> residual_infnorms;
  std::vector<double> residual_1norms;
  /// ||A^T r_k||_2, filled by gmres_normal_equations only.
  std::vector<double> normal_residual_2norms;
  /// x_k per k when requested.
  std::vector<Vector> solutions;
  bool breakdown = false;

  Index max_k() const { return static_cast<Index>(residual_2norms.size()) - 1; }
};

/// GMRES on a square operator: per k, y_k minimizes ||beta e_1 - H_{k+1,k} y||_2
/// by progressive Givens rotations; the full residual b - A x_k is formed to
/// record all three norms.
GmresTrace gmres_run(const LinearOperator& op, const Vector& b, const Vector& x0, Index max_k,
                     bool keep_solutions = false);

/// GMRES on A^T A x = A^T b for rectangular A. Residual norms are those of the
/// original system, b - A x_k.
GmresTrace gmres_normal_equations(const LinearOperator& op, const Vector& b, const Vector& x0, Index max_k,
                                  bool keep_solutions = false);

}  // namespace ksimplex
