#include <cmath>

#include "doctest.h"
#include "ksimplex/error.hpp"
#include "ksimplex/lp_oracle.hpp"
#include "tableau_simplex.hpp"
#include "test_support.hpp"

using namespace ksimplex;
using ksimplex::testing::Random;

TEST_CASE("k = 0") {
  const Vector r0{{1.0, -3.0, 2.0}};
  const OracleResult linf = oracle_projected_linf(DenseMatrix(3, 0), r0);
  CHECK(linf.objective == 3.0);
  CHECK(linf.y.size() == 0);
  CHECK(oracle_projected_l1(DenseMatrix(3, 0), r0).objective == 6.0);
}

TEST_CASE("single column equal to r0") {
  const Vector r0{{0.3, -1.2, 0.7, 2.0}};
  const OracleResult res = oracle_projected_linf(DenseMatrix(r0), r0);
  CHECK(res.objective <= 1e-14);
  // Independent 1-D scan of max_i |r0_i (1 - t)|.
  const double scan = ksimplex::testing::golden_section_min(
      [&](double t) { return (r0 * (1.0 - t)).lpNorm<Eigen::Infinity>(); }, -3.0, 3.0);
  CHECK(std::abs(res.objective - scan) <= 1e-9);
}

TEST_CASE("1-D scan agrees with the oracle on a generic column") {
  Random rng(20);
  const Vector r0 = rng.vector(9);
  const Vector a = rng.vector(9);
  const OracleResult res = oracle_projected_linf(DenseMatrix(a), r0);
  const double scan = ksimplex::testing::golden_section_min(
      [&](double t) { return (r0 - a * t).lpNorm<Eigen::Infinity>(); }, -50.0, 50.0);
  CHECK(std::abs(res.objective - scan) <= 1e-9);
  const double scan1 =
      ksimplex::testing::golden_section_min([&](double t) { return (r0 - a * t).lpNorm<1>(); }, -50.0, 50.0);
  CHECK(std::abs(oracle_projected_l1(DenseMatrix(a), r0).objective - scan1) <= 1e-9);
}

TEST_CASE("two-row l1 by hand") {
  const OracleResult res = oracle_projected_l1(DenseMatrix::Ones(2, 1), Vector{{3.0, 1.0}});
  CHECK(res.objective == doctest::Approx(2.0));
}

TEST_CASE("agreement with the tableau simplex") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Random rng(seed + 40);
    const DenseMatrix av = rng.dense(10, 3);
    const Vector r0 = rng.vector(10);
    CHECK(std::abs(oracle_projected_linf(av, r0).objective - ksimplex::testing::tableau_linf(av, r0)) <= 1e-9);
    const DenseMatrix av1 = rng.dense(12, 3);
    const Vector r1 = rng.vector(12);
    CHECK(std::abs(oracle_projected_l1(av1, r1).objective - ksimplex::testing::tableau_l1(av1, r1)) <= 1e-9);
  }
}

TEST_CASE("optimal values beat random probes and show the active counts") {
  Random rng(50);
  const Index m = 12;
  const Index k = 3;
  const DenseMatrix av = rng.dense(m, k);
  const Vector r0 = rng.vector(m);
  const OracleResult linf = oracle_projected_linf(av, r0);
  const OracleResult l1 = oracle_projected_l1(av, r0);
  CHECK(std::abs(norm_inf(r0 - av * linf.y) - linf.objective) <= 1e-12);
  CHECK(std::abs(norm_1(r0 - av * l1.y) - l1.objective) <= 1e-12);
  for (int probe = 0; probe < 1000; ++probe) {
    const Vector y = linf.y + 0.5 * rng.vector(k);
    CHECK(norm_inf(r0 - av * y) >= linf.objective - 1e-12);
    const Vector z = l1.y + 0.5 * rng.vector(k);
    CHECK(norm_1(r0 - av * z) >= l1.objective - 1e-12);
  }
  const Vector rl = r0 - av * linf.y;
  Index at_max = 0;
  for (Index i = 0; i < m; ++i) at_max += std::abs(rl[i]) >= linf.objective * (1 - 1e-9);
  CHECK(at_max >= k + 1);
  const Vector r1 = r0 - av * l1.y;
  Index zeros = 0;
  for (Index i = 0; i < m; ++i) zeros += std::abs(r1[i]) <= 1e-12;
  CHECK(zeros >= k);
}

TEST_CASE("budget and rank errors") {
  CHECK_THROWS_AS(oracle_projected_linf(DenseMatrix::Ones(31, 1), Vector::Ones(31)), OracleError);
  CHECK_THROWS_AS(oracle_projected_l1(DenseMatrix::Ones(10, 7), Vector::Ones(10)), OracleError);
  CHECK_THROWS_AS(oracle_projected_l1(DenseMatrix::Zero(5, 2), Vector::Ones(5)), OracleError);
  CHECK_THROWS_AS(oracle_projected_linf(DenseMatrix::Zero(5, 2), Vector::Ones(5)), OracleError);
  CHECK_THROWS_AS(oracle_projected_linf(DenseMatrix::Ones(4, 1), Vector::Ones(3)), DimensionError);
}
