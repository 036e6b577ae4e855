#pragma once

#include <cstdint>
#include <random>

#include "ksimplex/sparse_matrix.hpp"

namespace ksimplex::testing {

/// Seeded generator for test data; uniform draws come from the raw engine output.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  Index index(Index n) { return static_cast<Index>(uniform(0.0, 1.0) * static_cast<double>(n)); }
  Vector vector(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = uniform();
    return v;
  }
  DenseMatrix dense(Index m, Index n) {
    DenseMatrix a(m, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i) a(i, j) = uniform();
    return a;
  }
  /// Sparse matrix with roughly `density` of its entries nonzero and a nonzero diagonal.
  SparseMatrix sparse(Index m, Index n, double density) {
    std::vector<Triplet> t;
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j)
        if (i == j || uniform(0.0, 1.0) < density) t.push_back({i, j, uniform()});
    return SparseMatrix::from_triplets(m, n, t);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ksimplex::testing
