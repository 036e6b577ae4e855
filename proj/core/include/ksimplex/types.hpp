#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

namespace ksimplex {

using Index = std::ptrdiff_t;

/// Dense column vector of 64-bit reals.
using Vector = Eigen::VectorXd;

/// Dense column-major matrix; houses Krylov bases, cached operator products
/// and the small basic matrices.
using DenseMatrix = Eigen::MatrixXd;

inline double norm_inf(const Vector& x) { return x.size() == 0 ? 0.0 : x.lpNorm<Eigen::Infinity>(); }
inline double norm_1(const Vector& x) { return x.lpNorm<1>(); }
inline double norm_2(const Vector& x) { return x.norm(); }

}  // namespace ksimplex
