#include <cmath>

#include "doctest.h"
#include "ksimplex/error.hpp"
#include "ksimplex/krylov.hpp"
#include "ksimplex/linf_solver.hpp"
#include "ksimplex/lp_oracle.hpp"
#include "tableau_simplex.hpp"
#include "test_support.hpp"

using namespace ksimplex;
using ksimplex::testing::Random;

namespace {

Index active_count(const Vector& r, double gamma, double tol) {
  Index n = 0;
  for (Index i = 0; i < r.size(); ++i)
    if (std::abs(r[i]) >= gamma - tol) ++n;
  return n;
}

}  // namespace

TEST_CASE("init picks the largest residual with its side") {
  LinfSimplex s(Vector{{1.0, -3.0, 2.0}});
  CHECK(s.gamma() == 3.0);
  CHECK(s.basic().indices == std::vector<Index>{1});
  CHECK(s.basic().sides[0] == BoundSide::Lower);
  const LinfDual dual = s.solve_dual();
  CHECK(dual.lambda[0] == doctest::Approx(1.0));
  CHECK(dual.mu[0] == 0.0);
}

TEST_CASE("init ties go to the lowest index") {
  LinfSimplex s(Vector{{2.0, -2.0}});
  CHECK(s.basic().indices == std::vector<Index>{0});
  CHECK(s.basic().sides[0] == BoundSide::Upper);
}

TEST_CASE("zero residual is optimal at init") {
  LinfSimplex s(Vector::Zero(4));
  CHECK(s.exact());
  CHECK(s.gamma() == 0.0);
  CHECK(s.optimize(10).optimal);
}

TEST_CASE("random subspaces match the oracle and the tableau simplex") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Random rng(seed);
    const Index m = 14;
    const DenseMatrix av = rng.dense(m, 5);
    const Vector r0 = rng.vector(m);
    LinfSimplex s(r0);
    for (Index k = 1; k <= 5; ++k) {
      const double before = s.gamma();
      s.expand(av.col(k - 1));
      CHECK(s.gamma() <= before + 1e-12);
      double last = s.gamma();
      const auto out = s.optimize(10000, [&](SolveEvent, double g) {
        CHECK(g <= last + 1e-12);
        last = g;
      });
      REQUIRE(out.optimal);
      const OracleResult oracle = oracle_projected_linf(av.leftCols(k), r0);
      CHECK(std::abs(s.gamma() - oracle.objective) <= 1e-9 * (1 + oracle.objective));
      CHECK(std::abs(s.gamma() - ksimplex::testing::tableau_linf(av.leftCols(k), r0)) <= 1e-9);
      const LinfKktReport kkt = s.check_kkt();
      CHECK(kkt.satisfied(1e-8));
      CHECK(active_count(s.residual(), s.gamma(), 1e-8 * (1 + s.gamma())) >= k + 1);
      CHECK(std::abs(norm_inf(s.residual()) - s.gamma()) <= 1e-10 * (1 + s.gamma()));
    }
  }
}

TEST_CASE("identity system: one expansion reaches the k = 1 oracle optimum") {
  const Vector b{{1.0, -3.0, 2.0}};
  LinfSimplex s(b);
  CHECK(s.basic().indices == std::vector<Index>{1});
  const Vector av = b / b.norm();
  s.expand(av);
  REQUIRE(s.optimize(10).optimal);
  const OracleResult oracle = oracle_projected_linf(DenseMatrix(av), b);
  CHECK(std::abs(s.gamma() - oracle.objective) <= 1e-12);
  CHECK(s.gamma() <= 1e-14);

  const SparseMatrix eye = SparseMatrix::identity(3);
  const SparseOperator op(eye);
  RunOptions opts;
  const RunResult run = linf_run(op, b, Vector::Zero(3), opts);
  CHECK(run.status == RunStatus::Converged);
  CHECK(run.k == 1);
  CHECK((run.x - b).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("expansion change matches the multiplier prediction") {
  Index nondegenerate = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Random rng(seed + 500);
    const Index m = 12;
    const DenseMatrix av = rng.dense(m, 4);
    LinfSimplex s(rng.vector(m));
    for (Index k = 0; k < 4; ++k) {
      REQUIRE(s.optimize(10000).optimal);
      const LinfDual dual = s.solve_dual();
      Vector diff = Vector::Zero(m);
      for (Index p = 0; p < s.basic().size(); ++p) diff[s.basic().indices[p]] = dual.lambda[p] - dual.mu[p];
      const double rate = diff.dot(av.col(k));
      const double before = s.gamma();
      const LinfStep step = s.expand(av.col(k));
      CHECK(step.delta_gamma <= 0.0);
      CHECK(s.gamma() - before == doctest::Approx(step.delta_gamma).epsilon(1e-12));
      if (!step.degenerate) {
        ++nondegenerate;
        CHECK(std::abs(step.delta_gamma + std::abs(rate) * step.length) <= 1e-8 * (1.0 + std::abs(step.delta_gamma)));
      }
    }
  }
  CHECK(nondegenerate > 40);
}

TEST_CASE("expansion orthogonal to the multipliers keeps gamma") {
  LinfSimplex s(Vector{{3.0, 1.0, 0.0}});
  CHECK(s.basic().indices == std::vector<Index>{0});
  const LinfStep step = s.expand(Vector{{0.0, 1.0, 0.0}});
  CHECK(step.delta_gamma == 0.0);
  CHECK(s.gamma() == 3.0);
  CHECK(s.basic().size() == 2);
  CHECK(std::abs(s.residual()[step.entering]) == doctest::Approx(3.0));
}

TEST_CASE("degenerate pivot is reported and the leaving row re-enters flipped") {
  // Both rows tie at the upper bound after a zero-length expansion.
  LinfSimplex s(Vector{{1.0, 1.0}});
  const LinfStep grow = s.expand(Vector{{-3.0, -2.0}});
  CHECK(grow.degenerate);
  CHECK(s.gamma() == 1.0);
  CHECK(s.basic().sides == std::vector<BoundSide>{BoundSide::Upper, BoundSide::Upper});

  const LinfDual dual = s.solve_dual();
  const auto pos = s.leaving_position(dual);
  REQUIRE(pos);
  const Index q = s.basic().indices[static_cast<std::size_t>(*pos)];
  const LinfStep step = s.pivot(*pos);
  CHECK(step.entering == q);
  CHECK(step.side == BoundSide::Lower);
  CHECK(s.gamma() == doctest::Approx(0.2));
  CHECK(s.y()[0] == doctest::Approx(-0.4));
  CHECK(!s.leaving_position(s.solve_dual()));
}

TEST_CASE("negative multiplier exists exactly when the oracle is better") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Random rng(seed + 900);
    const Index m = 10;
    const DenseMatrix av = rng.dense(m, 3);
    const Vector r0 = rng.vector(m);
    LinfSimplex s(r0);
    for (Index k = 1; k <= 3; ++k) {
      s.expand(av.col(k - 1));
      const double best = oracle_projected_linf(av.leftCols(k), r0).objective;
      for (int it = 0; it < 1000; ++it) {
        const auto pos = s.leaving_position(s.solve_dual());
        CHECK(pos.has_value() == (s.gamma() > best + 1e-9 * (1 + best)));
        if (!pos) break;
        s.pivot(*pos);
      }
      CHECK(std::abs(s.gamma() - best) <= 1e-9 * (1 + best));
    }
  }
}

TEST_CASE("random sparse 20x15 at k = 4 terminates at the oracle optimum") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Random rng(seed + 40);
    const SparseMatrix a = rng.sparse(20, 15, 0.4);
    const SparseOperator op(a);
    const Vector r0 = rng.vector(20);
    KrylovBasis basis(op, r0);
    LinfSimplex s(r0);
    Index pivots = 0;
    for (Index k = 1; k <= 4; ++k) {
      s.expand(basis.expand().av);
      const InnerOutcome out = s.optimize(15504);
      pivots += out.iterations;
      REQUIRE(out.optimal);
    }
    CHECK(pivots <= 15504);
    const OracleResult oracle = oracle_projected_linf(DenseMatrix(basis.av()), r0);
    CHECK(std::abs(s.gamma() - oracle.objective) <= 1e-9 * (1 + oracle.objective));
  }
}

TEST_CASE("kkt check rejects a raised gamma") {
  Random rng(77);
  const DenseMatrix av = rng.dense(15, 4);
  LinfSimplex s(rng.vector(15));
  for (Index k = 0; k < 4; ++k) {
    s.expand(av.col(k));
    REQUIRE(s.optimize(10000).optimal);
  }
  const LinfKktReport good = s.check_kkt();
  CHECK(good.satisfied(1e-8));
  const auto [lambda, mu] = s.full_multipliers(s.solve_dual());
  const LinfKktReport bad = linf_kkt_report(DenseMatrix(s.av()), s.residual(), s.gamma() + 1.0, lambda, mu);
  CHECK(bad.primal_violation <= 0.0);
  CHECK(bad.complementarity >= 1.0 / 5.0 - 1e-12);  // five multipliers sum to one
  CHECK(!bad.satisfied(1e-8));
}

TEST_CASE("multipliers annihilate the projected operator at the optimum") {
  // (A V_k)^T (lambda - mu) = 0 holds; V_{k+1}^T (lambda - mu) need not vanish.
  Random rng(5);
  const SparseMatrix a = rng.sparse(30, 30, 0.3);
  const SparseOperator op(a);
  const Vector r0 = rng.vector(30);
  KrylovBasis basis(op, r0);
  LinfSimplex s(r0);
  for (Index k = 1; k <= 8; ++k) {
    s.expand(basis.expand().av);
    REQUIRE(s.optimize(10000).optimal);
    const auto [lambda, mu] = s.full_multipliers(s.solve_dual());
    const Vector diff = lambda - mu;
    CHECK((basis.v().transpose() * op.apply_transpose(diff)).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}
