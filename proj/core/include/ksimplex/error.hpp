#pragma once

#include <stdexcept>
#include <string>

#include "ksimplex/types.hpp"

namespace ksimplex {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed Matrix Market or vector file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Zero pivot in a triangular solve or a (numerically) singular basic matrix.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, Index index) : Error(what), index_(index) {}
  Index index() const noexcept { return index_; }

 private:
  Index index_;
};

/// The seed residual is zero: nothing to solve.
class AlreadyConvergedError : public Error {
 public:
  using Error::Error;
};

/// A simplex step could not be completed (degenerate direction, empty ratio test).
class SimplexError : public Error {
 public:
  using Error::Error;
};

/// The brute-force oracle found no feasible basic solution or the budget was exceeded.
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace ksimplex
