#pragma once

#include <algorithm>

#include "ksimplex/types.hpp"

namespace ksimplex {

/// Growable set of equal-length columns backed by one dense matrix with
/// geometric capacity growth.
class ColumnStore {
 public:
  ColumnStore() = default;
  explicit ColumnStore(Index rows) : data_(rows, 0) {}

  Index rows() const noexcept { return data_.rows(); }
  Index cols() const noexcept { return count_; }

  void append(const Vector& column) {
    if (count_ == data_.cols()) data_.conservativeResize(Eigen::NoChange, std::max<Index>(4, 2 * count_));
    data_.col(count_++) = column;
  }

  auto matrix() const { return data_.leftCols(count_); }
  auto col(Index j) const { return data_.col(j); }

 private:
  DenseMatrix data_;
  Index count_ = 0;
};

}  // namespace ksimplex
