#include <cmath>

#include "doctest.h"
#include "ksimplex/error.hpp"
#include "ksimplex/krylov.hpp"
#include "test_support.hpp"

using namespace ksimplex;
using ksimplex::testing::Random;

namespace {

double orthogonality(const DenseMatrix& v) {
  return (v.transpose() * v - DenseMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("seed normalization") {
  const SparseMatrix id = SparseMatrix::identity(3);
  SparseOperator op(id);
  KrylovBasis b(op, Vector{{3.0, 0.0, 0.0}});
  CHECK(b.mode() == KrylovMode::Arnoldi);
  CHECK(b.dimension() == 0);
  CHECK(b.v_all().col(0).isApprox(Vector{{1.0, 0.0, 0.0}}));

  const SparseMatrix id2 = SparseMatrix::identity(2);
  SparseOperator op2(id2);
  KrylovBasis b2(op2, Vector{{1.0, 1.0}});
  CHECK(b2.v_all().col(0).isApprox(Vector::Constant(2, 1.0 / std::sqrt(2.0))));

  CHECK_THROWS_AS(KrylovBasis(op, Vector::Zero(3)), AlreadyConvergedError);
  CHECK_THROWS_AS(KrylovBasis(op, Vector::Zero(2)), DimensionError);
}

TEST_CASE("identity breaks down after one step") {
  const SparseMatrix id = SparseMatrix::identity(4);
  SparseOperator op(id);
  KrylovBasis b(op, Vector::Unit(4, 0));
  const KrylovColumn c = b.expand();
  CHECK(c.av.isApprox(Vector::Unit(4, 0)));
  CHECK(b.breakdown());
  CHECK_THROWS_AS(b.expand(), Error);
}

TEST_CASE("diag(1,2) Arnoldi by hand") {
  const SparseMatrix d = SparseMatrix::diagonal(Vector{{1.0, 2.0}});
  SparseOperator op(d);
  KrylovBasis b(op, Vector::Constant(2, 1.0 / std::sqrt(2.0)));
  b.expand();
  CHECK_FALSE(b.breakdown());
  b.expand();
  CHECK(b.breakdown());
  // v1 = (1,1)/sqrt2: h11 = v1^T A v1 = 3/2, A v1 - h11 v1 = (-1,1)/(2 sqrt2), h21 = 1/2.
  const DenseMatrix h = b.projected_matrix();
  CHECK(h(0, 0) == doctest::Approx(1.5));
  CHECK(h(1, 0) == doctest::Approx(0.5));
  CHECK(h(0, 1) == doctest::Approx(0.5));
  CHECK(h(1, 1) == doctest::Approx(1.5));
  CHECK(std::abs(h(2, 1)) <= 1e-14);
}

TEST_CASE("Arnoldi relation and orthogonality on a random square operator") {
  Random rng(8);
  const SparseMatrix a = rng.sparse(30, 30, 0.3);
  SparseOperator op(a);
  KrylovBasis b(op, rng.vector(30));
  const double anorm = a.to_dense().norm();
  for (Index k = 1; k <= 20; ++k) {
    const KrylovColumn c = b.expand();
    CHECK((spmv(a, c.v) - c.av).lpNorm<Eigen::Infinity>() <= 1e-13 * std::max(1.0, c.av.lpNorm<Eigen::Infinity>()));
    const DenseMatrix vk1 = b.v_all();
    CHECK(vk1.cols() == k + 1);
    CHECK(orthogonality(vk1) <= 1e-10);
    CHECK((DenseMatrix(b.av()) - vk1 * b.projected_matrix()).norm() <= 1e-10 * anorm);
  }
}

TEST_CASE("Golub-Kahan relation on a random rectangular operator") {
  Random rng(9);
  const SparseMatrix a = rng.sparse(30, 20, 0.4);
  SparseOperator op(a);
  KrylovBasis b(op, rng.vector(30));
  CHECK(b.mode() == KrylovMode::GolubKahan);
  const double anorm = a.to_dense().norm();
  for (Index k = 1; k <= 10; ++k) {
    b.expand();
    CHECK(orthogonality(b.v()) <= 1e-10);
    CHECK(orthogonality(b.u()) <= 1e-10);
    CHECK((DenseMatrix(b.av()) - DenseMatrix(b.u()) * b.projected_matrix()).norm() <= 1e-10 * anorm);
  }
  // V spans the Krylov space of A^T A seeded with A^T r0.
  CHECK(b.alphas().size() >= 10);
}

TEST_CASE("Golub-Kahan reaches breakdown on a small full-rank operator") {
  Random rng(10);
  const SparseMatrix a = rng.sparse(6, 3, 0.8);
  SparseOperator op(a);
  KrylovBasis b(op, rng.vector(6));
  while (!b.breakdown()) b.expand();
  CHECK(b.dimension() <= 3);
}
