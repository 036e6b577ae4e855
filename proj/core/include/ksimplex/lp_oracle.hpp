#pragma once

#include "ksimplex/types.hpp"

namespace ksimplex {

struct OracleResult {
  double objective = 0.0;
  Vector y;
  Index subsets = 0;  ///< row subsets examined
};

/// Largest problem sizes accepted by the exhaustive oracles.
struct OracleBudget {
  Index max_rows = 30;
  Index max_linf_cols = 8;
  Index max_l1_cols = 6;
};

/// min_y ||r0 - AV y||_inf by exhaustive search over (k+1)-row references.
///
/// For each subset S with a one-dimensional left null space c of AV|_S, the
/// sign pattern s = sign(c^T r0_S) sign(c) gives the basic solution with
/// gamma_S = |c^T r0_S| / ||c||_1. The largest gamma_S is the optimum; its
/// basic solution y is recovered and checked for feasibility on every row.
OracleResult oracle_projected_linf(const DenseMatrix& av, const Vector& r0, OracleBudget budget = {});

/// min_y ||r0 - AV y||_1 by solving AV|_S y = r0|_S over every nonsingular k-row subset.
OracleResult oracle_projected_l1(const DenseMatrix& av, const Vector& r0, OracleBudget budget = {});

}  // namespace ksimplex
