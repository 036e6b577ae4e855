#include "ksimplex/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ksimplex/error.hpp"

namespace ksimplex {

Vector synthetic_image(Index grid_n, std::uint64_t seed) {
  Rng rng(seed);
  constexpr int kBumps = 5;
  struct Bump {
    double cx, cy, width, amplitude;
  };
  std::vector<Bump> bumps;
  for (int b = 0; b < kBumps; ++b) {
    const double cx = (0.15 + 0.7 * rng.uniform()) * static_cast<double>(grid_n);
    const double cy = (0.15 + 0.7 * rng.uniform()) * static_cast<double>(grid_n);
    const double width = (0.05 + 0.15 * rng.uniform()) * static_cast<double>(grid_n);
    const double amplitude = 0.5 + rng.uniform();
    bumps.push_back({cx, cy, width, amplitude});
  }
  Vector img = Vector::Zero(grid_n * grid_n);
  for (Index i = 0; i < grid_n; ++i) {
    for (Index j = 0; j < grid_n; ++j) {
      double v = 0.0;
      for (const auto& b : bumps) {
        const double dx = static_cast<double>(j) - b.cx;
        const double dy = static_cast<double>(i) - b.cy;
        v += b.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * b.width * b.width));
      }
      img[i * grid_n + j] = v;
    }
  }
  return img;
}

SparseMatrix five_point_stencil(Index grid_n, double scale) {
  if (grid_n < 2) throw DimensionError("stencil: grid size must be at least 2");
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(5 * grid_n * grid_n));
  for (Index i = 0; i < grid_n; ++i) {
    for (Index j = 0; j < grid_n; ++j) {
      const Index p = i * grid_n + j;
      t.push_back({p, p, 4.0 * scale});
      if (i > 0) t.push_back({p, p - grid_n, scale});
      if (i + 1 < grid_n) t.push_back({p, p + grid_n, scale});
      if (j > 0) t.push_back({p, p - 1, scale});
      if (j + 1 < grid_n) t.push_back({p, p + 1, scale});
    }
  }
  return SparseMatrix::from_triplets(grid_n * grid_n, grid_n * grid_n, t);
}

TestProblem gen_blur_square(Index grid_n, std::uint64_t seed) {
  TestProblem p;
  p.a = five_point_stencil(grid_n, 1.0 / 8.0);
  p.image = synthetic_image(grid_n, seed);
  p.b_clean = spmv(p.a, p.image);
  p.b = p.b_clean;
  return p;
}

std::vector<Index> corrupt(Vector& b, const CorruptionSpec& spec) {
  if (!(spec.fraction >= 0.0 && spec.fraction <= 1.0)) throw Error("corrupt: fraction must lie in [0, 1]");
  const Index n = b.size();
  const auto count = static_cast<Index>(std::llround(spec.fraction * static_cast<double>(n)));
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  Rng rng(spec.seed);
  for (Index i = 0; i < count; ++i) {
    const Index j = i + rng.below(n - i);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  std::vector<Index> chosen(perm.begin(), perm.begin() + count);
  std::sort(chosen.begin(), chosen.end());
  for (Index i : chosen) b[i] *= spec.factor;
  return chosen;
}

TestProblem gen_deblur_two_stencil(Index grid_n, const CorruptionSpec& corruption, std::uint64_t seed) {
  if (grid_n < 2) throw DimensionError("gen_deblur_two_stencil: grid size must be at least 2");
  const Index n2 = grid_n * grid_n;
  const SparseMatrix five = five_point_stencil(grid_n, 1.0);
  std::vector<Triplet> t;
  for (Index r = 0; r < n2; ++r) {
    const auto cols = five.row_cols(r);
    const auto vals = five.row_values(r);
    for (std::size_t q = 0; q < cols.size(); ++q) t.push_back({r, cols[q], vals[q]});
  }
  for (Index i = 0; i < grid_n; ++i) {
    for (Index j = 0; j < grid_n; ++j) {
      const Index row = n2 + i * grid_n + j;
      for (Index di = 0; di < 2; ++di)
        for (Index dj = 0; dj < 2; ++dj)
          if (i + di < grid_n && j + dj < grid_n) t.push_back({row, (i + di) * grid_n + j + dj, 1.0});
    }
  }
  TestProblem p;
  p.a = SparseMatrix::from_triplets(2 * n2, n2, t);
  p.image = synthetic_image(grid_n, seed);
  p.b_clean = spmv(p.a, p.image);
  p.b = p.b_clean;
  p.corrupted = corrupt(p.b, corruption);
  return p;
}

}  // namespace ksimplex
