#include <cmath>

#include <Eigen/QR>

#include "doctest.h"
#include "ksimplex/error.hpp"
#include "ksimplex/gmres.hpp"
#include "test_support.hpp"

using namespace ksimplex;
using ksimplex::testing::Random;

TEST_CASE("identity converges in one step") {
  const SparseMatrix id = SparseMatrix::identity(5);
  SparseOperator op(id);
  const Vector b{{1.0, -2.0, 3.0, 0.5, 0.0}};
  const GmresTrace t = gmres_run(op, b, Vector::Zero(5), 10, true);
  CHECK(t.max_k() == 1);
  CHECK(t.residual_2norms[1] <= 1e-15);
  CHECK(t.breakdown);
  CHECK((t.solutions[1] - b).norm() <= 1e-14);
}

TEST_CASE("diag(1,2) by hand") {
  const SparseMatrix d = SparseMatrix::diagonal(Vector{{1.0, 2.0}});
  SparseOperator op(d);
  const GmresTrace t = gmres_run(op, Vector{{1.0, 1.0}}, Vector::Zero(2), 5);
  // k=1: min_c ||(1,1) - c (1,2)||, c = 3/5, residual (2/5, -1/5), norm 1/sqrt5.
  CHECK(t.residual_2norms[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(t.residual_2norms[1] == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(t.residual_infnorms[1] == doctest::Approx(0.4));
  CHECK(t.residual_1norms[1] == doctest::Approx(0.6));
  REQUIRE(t.max_k() == 2);
  CHECK(t.residual_2norms[2] <= 1e-14);
}

TEST_CASE("residual norms never increase") {
  Random rng(12);
  const SparseMatrix a = rng.sparse(50, 50, 0.2);
  SparseOperator op(a);
  const GmresTrace t = gmres_run(op, rng.vector(50), Vector::Zero(50), 40);
  for (std::size_t k = 1; k < t.residual_2norms.size(); ++k)
    CHECK(t.residual_2norms[k] <= t.residual_2norms[k - 1] * (1 + 1e-12));
  CHECK_THROWS_AS(gmres_run(SparseOperator(rng.sparse(4, 3, 0.5)), Vector::Ones(4), Vector::Zero(3), 2),
                  DimensionError);
}

TEST_CASE("normal equations on orthonormal columns") {
  Random rng(13);
  const DenseMatrix q = rng.dense(12, 4).householderQr().householderQ() * DenseMatrix::Identity(12, 4);
  const SparseMatrix a = SparseMatrix::from_dense(q);
  SparseOperator op(a);
  const Vector b = rng.vector(12);
  const GmresTrace t = gmres_normal_equations(op, b, Vector::Zero(4), 10, true);
  CHECK(t.max_k() <= 4);
  const Vector ls = q.transpose() * b;
  CHECK((t.solutions.back() - ls).norm() <= 1e-12);
}

TEST_CASE("normal equations on a random rectangular operator") {
  Random rng(14);
  const SparseMatrix a = rng.sparse(100, 90, 0.1);
  SparseOperator op(a);
  const Vector b = rng.vector(100);
  const GmresTrace t = gmres_normal_equations(op, b, Vector::Zero(90), 200, true);
  for (std::size_t k = 1; k < t.residual_2norms.size(); ++k)
    CHECK(t.residual_2norms[k] <= t.residual_2norms[k - 1] * (1 + 1e-12));
  const DenseMatrix d = a.to_dense();
  const Vector ls = d.colPivHouseholderQr().solve(b);
  CHECK((t.solutions.back() - ls).norm() <= 1e-8 * ls.norm());
}
