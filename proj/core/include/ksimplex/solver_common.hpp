#pragma once

#include <chrono>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "ksimplex/types.hpp"

namespace ksimplex {

enum class SolveEvent { Init, Expand, Pivot, Degenerate, Optimal };

std::string_view to_string(SolveEvent e);

/// One line of the convergence log: an expansion, a pivot or a declared optimum.
struct ConvergenceRecord {
  Index outer_k = 0;
  Index inner_iter = 0;
  double objective = 0.0;
  SolveEvent event = SolveEvent::Init;
  double wall_time_ms = 0.0;
};

/// Per-subspace summary recorded when the inner loop of dimension k finishes.
struct OuterRecord {
  Index k = 0;
  Index inner_iterations = 0;
  bool optimal = false;  ///< inner simplex reached optimality (not capped)
  double objective = 0.0;
  double residual_inf = 0.0;
  double residual_1 = 0.0;
  double residual_2 = 0.0;
};

struct RunOptions {
  Index max_outer = 100;  ///< largest Krylov dimension
  Index max_inner = std::numeric_limits<Index>::max();  ///< total inner-iteration budget
  Index cap_inner = std::numeric_limits<Index>::max();  ///< per-subspace cap; forces expansion
  double tol = 1e-12;  ///< absolute objective threshold for convergence
};

enum class RunStatus {
  Converged,       ///< objective <= tol
  Breakdown,       ///< invariant Krylov subspace, optimized over it
  IterationLimit,  ///< max_outer or max_inner exhausted
};

std::string_view to_string(RunStatus s);

struct RunResult {
  Vector x;
  RunStatus status = RunStatus::IterationLimit;
  double objective = 0.0;
  Index k = 0;
  Index total_inner = 0;
  std::vector<ConvergenceRecord> log;
  std::vector<OuterRecord> outer;
};

/// Outcome of an inner simplex loop on a fixed subspace.
struct InnerOutcome {
  Index iterations = 0;
  bool optimal = false;
  bool exact = false;  ///< objective reached zero
};

/// Observer called after every pivot with the event kind and new objective.
using PivotObserver = std::function<void(SolveEvent, double)>;

/// Milliseconds since construction.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace ksimplex
