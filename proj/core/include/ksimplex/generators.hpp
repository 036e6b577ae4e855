#pragma once

#include <cstdint>
#include <random>

#include "ksimplex/sparse_matrix.hpp"

namespace ksimplex {

/// Which entries of a right-hand side get scaled, and by how much.
struct CorruptionSpec {
  double fraction = 0.01;
  double factor = 0.999;
  std::uint64_t seed = 7;
};

struct TestProblem {
  SparseMatrix a;
  Vector b;
  Vector b_clean;          ///< b before corruption (equal to b when none is applied)
  Vector image;            ///< the synthetic image x with b_clean = A x
  std::vector<Index> corrupted;  ///< indices of the scaled entries, increasing
};

/// Seeded Mersenne twister with uniform draws derived from the raw 64-bit
/// output, so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n).
  Index below(Index n) { return static_cast<Index>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

/// Smooth grid_n x grid_n test image (sum of Gaussian bumps), flattened row-major.
Vector synthetic_image(Index grid_n, std::uint64_t seed);

/// 5-point stencil with center 4 and unit N/S/E/W weights on a grid_n x grid_n
/// grid with zero boundary, times `scale`, as an n^2 x n^2 matrix.
SparseMatrix five_point_stencil(Index grid_n, double scale);

/// Symmetric blur operator (5-point stencil scaled by 1/8) and b = A * image.
TestProblem gen_blur_square(Index grid_n, std::uint64_t seed = 1);

/// 2 n^2 x n^2 operator stacking the unscaled 5-point stencil and the 2x2
/// all-ones block stencil; b is A * image with a seeded fraction of entries
/// multiplied by the corruption factor.
TestProblem gen_deblur_two_stencil(Index grid_n, const CorruptionSpec& corruption, std::uint64_t seed = 1);

/// Scales exactly round(fraction * size) distinct entries of b, chosen uniformly; returns their indices.
std::vector<Index> corrupt(Vector& b, const CorruptionSpec& spec);

}  // namespace ksimplex
