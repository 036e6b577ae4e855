#include "ksimplex/solver_common.hpp"

namespace ksimplex {

std::string_view to_string(SolveEvent e) {
  switch (e) {
    case SolveEvent::Init: return "init";
    case SolveEvent::Expand: return "expand";
    case SolveEvent::Pivot: return "pivot";
    case SolveEvent::Degenerate: return "degenerate";
    case SolveEvent::Optimal: return "optimal";
  }
  return "unknown";
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "converged";
    case RunStatus::Breakdown: return "breakdown";
    case RunStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

}  // namespace ksimplex
