#include "ksimplex/ratio_test.hpp"

#include <algorithm>
#include <limits>

namespace ksimplex {

void RatioTest::offer(Index index, int side, double numerator, double denominator) {
  if (!(denominator > pivot_tol_)) return;
  candidates_.push_back({index, side, std::max(0.0, numerator), denominator});
}

std::optional<Blocking> RatioTest::select() const {
  if (candidates_.empty()) return std::nullopt;
  double bound = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates_) bound = std::min(bound, (c.numerator + feas_tol_) / c.denominator);

  const Candidate* best = nullptr;
  for (const auto& c : candidates_) {
    if (c.numerator / c.denominator > bound) continue;
    if (best == nullptr || c.denominator > best->denominator ||
        (c.denominator == best->denominator && c.index < best->index))
      best = &c;
  }
  return Blocking{best->index, best->side, best->numerator / best->denominator};
}

}  // namespace ksimplex
