#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ksimplex/gmres.hpp"
#include "ksimplex/l1_solver.hpp"
#include "ksimplex/linf_solver.hpp"

namespace ksimplex {

/// Per-k comparison of the two simplex solvers and the l2 reference.
///
/// The reference ("gm") is GMRES for square operators and GMRES on the normal
/// equations otherwise; `gmne_l2` is always the normal-equations run. Entries
/// are NaN where a solver stopped before reaching k.
struct CompareRow {
  Index k = 0;
  double ks_inf = 0.0;     ///< ||r||_inf of the l-infinity solver
  double ks_inf_l2 = 0.0;  ///< ||r||_2 of the l-infinity solver
  double ks_l1 = 0.0;      ///< ||r||_1 of the l1 solver
  double gm_inf = 0.0;
  double gm_l1 = 0.0;
  double gm_l2 = 0.0;
  double gmne_l2 = 0.0;
  bool ks_inf_optimal = false;
  bool ks_l1_optimal = false;

  double bound_inf_margin() const { return gm_l2 - ks_inf; }
  double bound_l1_margin(Index m) const;     ///< sqrt(m) gm_l2 - ks_l1
  double bound_l1_ne_margin(Index m) const;  ///< sqrt(m) gmne_l2 - ks_l1
};

struct CompareOptions {
  Index max_k = 40;
  Index max_inner = std::numeric_limits<Index>::max();
  Index cap_inner = std::numeric_limits<Index>::max();
  double tol = 0.0;
};

struct CompareResult {
  Index rows = 0;  ///< m, the residual length
  std::vector<CompareRow> table;
  RunResult linf;
  RunResult l1;
  GmresTrace reference;
  GmresTrace normal_reference;
};

CompareResult run_compare(const LinearOperator& op, const Vector& b, const Vector& x0, const CompareOptions& options);

/// CSV of the comparison table, including the norm-bound margins and the
/// inequality-chain columns gm_inf - ks_inf, gm_l2 - gm_inf, ks_inf_l2 - gm_l2.
void write_compare_csv(std::ostream& out, const CompareResult& result);

/// Reads the table columns back from write_compare_csv output.
std::vector<CompareRow> read_compare_csv(std::istream& in);

enum class NormKind { Linf, L1, L2 };

/// One row per log record: outer_k, inner_iter, event, obj_linf, obj_l1, obj_l2, wall_time_ms.
/// Only the column of `norm` is filled.
void write_log_csv(std::ostream& out, const RunResult& run, NormKind norm);

/// Per-k rows for an l2 reference run with every norm filled.
void write_gmres_csv(std::ostream& out, const GmresTrace& trace);

}  // namespace ksimplex
