#include <Eigen/LU>

#include "doctest.h"
#include "ksimplex/error.hpp"
#include "ksimplex/qr_update.hpp"
#include "test_support.hpp"

using namespace ksimplex;
using ksimplex::testing::Random;

namespace {

double reconstruction_error(const QrFactors& f, const DenseMatrix& b) {
  return (f.q() * f.r() - b).norm() / std::max(1.0, b.norm());
}

bool strictly_upper(const DenseMatrix& r) {
  for (Index j = 0; j < r.cols(); ++j)
    for (Index i = j + 1; i < r.rows(); ++i)
      if (r(i, j) != 0.0) return false;
  return true;
}

DenseMatrix well_conditioned(Random& rng, Index n) {
  return rng.dense(n, n) + 3.0 * DenseMatrix::Identity(n, n);
}

}  // namespace

TEST_CASE("factor of identity and a permutation") {
  const QrFactors id = qr_factor(DenseMatrix::Identity(3, 3));
  CHECK((id.q().cwiseAbs() - DenseMatrix::Identity(3, 3)).norm() <= 1e-15);
  CHECK((id.r().cwiseAbs() - DenseMatrix::Identity(3, 3)).norm() <= 1e-15);

  DenseMatrix p(2, 2);
  p << 0, 1, 1, 0;
  const QrFactors f = qr_factor(p);
  CHECK(reconstruction_error(f, p) <= 1e-15);
  CHECK(std::abs(std::abs(f.r().determinant()) - 1.0) <= 1e-15);
}

TEST_CASE("random factor residuals") {
  Random rng(1);
  const DenseMatrix b = rng.dense(15, 15);
  const QrFactors f = qr_factor(b);
  CHECK((f.q() * f.r() - b).norm() <= 1e-13 * b.norm());
  CHECK(f.orthogonality_error() <= 1e-13);
  CHECK(strictly_upper(f.r()));
}

TEST_CASE("rank-one update basics") {
  QrFactors f = qr_factor(DenseMatrix::Identity(2, 2));
  f.rank_one_update(Vector::Zero(2), Vector::Ones(2));
  CHECK(reconstruction_error(f, DenseMatrix::Identity(2, 2)) <= 1e-15);

  QrFactors g = qr_factor(DenseMatrix::Identity(2, 2));
  g.rank_one_update(Vector::Unit(2, 0), Vector::Unit(2, 1));
  DenseMatrix expect(2, 2);
  expect << 1, 1, 0, 1;
  CHECK(reconstruction_error(g, expect) <= 1e-14);
  CHECK(strictly_upper(g.r()));
  CHECK(g.update_count() == 1);
}

TEST_CASE("500 rank-one updates against dense accumulation") {
  Random rng(2);
  DenseMatrix b = well_conditioned(rng, 40);
  QrFactors f = qr_factor(b);
  for (int it = 0; it < 500; ++it) {
    const Vector u = 0.3 * rng.vector(40);
    const Vector v = 0.3 * rng.vector(40);
    b += u * v.transpose();
    f.rank_one_update(u, v);
    CHECK(strictly_upper(f.r()));
    CHECK(f.orthogonality_error() <= 1e-10);
  }
  CHECK((f.q() * f.r() - b).norm() / b.norm() <= 1e-10);
  CHECK((f.tracked() - b).norm() <= 1e-12 * b.norm());
  CHECK(f.refactor_count() >= 500 / 64);
}

TEST_CASE("row replacement") {
  Random rng(3);
  const DenseMatrix b = well_conditioned(rng, 6);
  QrFactors f = qr_factor(b);
  const Vector rhs = rng.vector(6);
  const Vector before = f.solve(rhs);
  f.replace_row(2, b.row(2).transpose());
  CHECK((f.solve(rhs) - before).lpNorm<Eigen::Infinity>() <= 1e-14 * before.lpNorm<Eigen::Infinity>());

  QrFactors g = qr_factor(DenseMatrix::Identity(2, 2));
  g.replace_row(0, Vector{{0.0, 1.0}});
  DenseMatrix expect(2, 2);
  expect << 0, 1, 0, 1;
  CHECK(g.tracked() == expect);
  CHECK_THROWS_AS(g.solve(Vector::Ones(2)), SingularMatrixError);
  CHECK_THROWS_AS(g.replace_row(2, Vector::Ones(2)), DimensionError);
}

TEST_CASE("random row replacements agree with a fresh factorization") {
  Random rng(4);
  DenseMatrix b = well_conditioned(rng, 12);
  QrFactors f = qr_factor(b);
  for (int it = 0; it < 100; ++it) {
    const Index j = rng.index(12);
    Vector row = rng.vector(12);
    row[j] += 3.0;
    b.row(j) = row.transpose();
    f.replace_row(j, row);
    const Vector rhs = rng.vector(12);
    const Vector fresh = qr_factor(b).solve(rhs);
    CHECK((f.solve(rhs) - fresh).lpNorm<Eigen::Infinity>() <= 1e-10 * fresh.lpNorm<Eigen::Infinity>());
  }
}

TEST_CASE("expansion") {
  QrFactors a = qr_factor(DenseMatrix::Constant(1, 1, 5.0));
  a.expand(Vector::Zero(1), Vector{{0.0, 1.0}});
  DenseMatrix d = DenseMatrix::Zero(2, 2);
  d(0, 0) = 5.0;
  d(1, 1) = 1.0;
  CHECK(reconstruction_error(a, d) <= 1e-15);

  QrFactors i2 = qr_factor(DenseMatrix::Identity(2, 2));
  i2.expand(Vector::Zero(2), Vector{{0.0, 0.0, 1.0}});
  CHECK(reconstruction_error(i2, DenseMatrix::Identity(3, 3)) <= 1e-14);

  Random rng(5);
  const DenseMatrix b = well_conditioned(rng, 10);
  QrFactors f = qr_factor(b);
  const Vector col = rng.vector(10);
  Vector row = rng.vector(11);
  row[10] += 3.0;
  f.expand(col, row);
  DenseMatrix big(11, 11);
  big.topLeftCorner(10, 10) = b;
  big.col(10).head(10) = col;
  big.row(10) = row.transpose();
  CHECK(f.tracked() == big);
  CHECK(strictly_upper(f.r()));
  const Vector rhs = rng.vector(11);
  const Vector fresh = qr_factor(big).solve(rhs);
  CHECK((f.solve(rhs) - fresh).lpNorm<Eigen::Infinity>() <= 1e-11 * fresh.lpNorm<Eigen::Infinity>());

  QrFactors empty;
  empty.expand(Vector(0), Vector{{2.0}});
  CHECK(empty.solve(Vector{{4.0}})[0] == doctest::Approx(2.0));
}

TEST_CASE("solves against a dense LU oracle") {
  DenseMatrix d(2, 2);
  d << 2, 0, 0, 4;
  const Vector x = qr_factor(d).solve(Vector{{2.0, 8.0}});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(2.0));
  CHECK(qr_factor(DenseMatrix::Identity(3, 3)).solve(Vector{{1.0, 2.0, 3.0}}).isApprox(Vector{{1.0, 2.0, 3.0}}));

  DenseMatrix u(2, 2);
  u << 1, 1, 0, 1;
  const Vector xt = qr_factor(u).solve_transpose(Vector{{1.0, 2.0}});
  CHECK(xt[0] == doctest::Approx(1.0));
  CHECK(xt[1] == doctest::Approx(1.0));

  Random rng(6);
  const DenseMatrix b = rng.dense(20, 20);
  const Vector rhs = rng.vector(20);
  const QrFactors f = qr_factor(b);
  const Vector lu = b.partialPivLu().solve(rhs);
  CHECK((f.solve(rhs) - lu).lpNorm<Eigen::Infinity>() <= 1e-10 * lu.lpNorm<Eigen::Infinity>());
  const DenseMatrix bt = b.transpose();
  const Vector lut = bt.partialPivLu().solve(rhs);
  CHECK((f.solve_transpose(rhs) - lut).lpNorm<Eigen::Infinity>() <= 1e-10 * lut.lpNorm<Eigen::Infinity>());
  CHECK_THROWS_AS(f.solve(Vector::Ones(3)), DimensionError);
}

TEST_CASE("singularity is reported with the offending diagonal") {
  DenseMatrix s = DenseMatrix::Identity(3, 3);
  s(2, 2) = 0.0;
  try {
    qr_factor(s).solve(Vector::Ones(3));
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("mixed update sequence keeps the solve contract") {
  Random rng(7);
  DenseMatrix b = well_conditioned(rng, 5);
  QrFactors f = qr_factor(b);
  for (int it = 0; it < 300; ++it) {
    const int kind = static_cast<int>(rng.index(3));
    const Index s = b.rows();
    if (kind == 0) {
      const Vector u = 0.2 * rng.vector(s);
      const Vector v = 0.2 * rng.vector(s);
      b += u * v.transpose();
      f.rank_one_update(u, v);
    } else if (kind == 1) {
      const Index j = rng.index(s);
      Vector row = rng.vector(s);
      row[j] += 3.0;
      b.row(j) = row.transpose();
      f.replace_row(j, row);
    } else if (s < 30) {
      const Vector col = rng.vector(s);
      Vector row = rng.vector(s + 1);
      row[s] += 3.0;
      DenseMatrix big(s + 1, s + 1);
      big.topLeftCorner(s, s) = b;
      big.col(s).head(s) = col;
      big.row(s) = row.transpose();
      b = big;
      f.expand(col, row);
    }
    const Vector rhs = rng.vector(b.rows());
    const Vector x = f.solve(rhs);
    CHECK((b * x - rhs).lpNorm<Eigen::Infinity>() <=
          1e-9 * (b.norm() * x.lpNorm<Eigen::Infinity>() + rhs.lpNorm<Eigen::Infinity>()));
    CHECK(f.drift_estimate() <= 1e-11);
  }
}
