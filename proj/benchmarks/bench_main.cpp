#include <benchmark/benchmark.h>

#include <random>

#include "ksimplex/generators.hpp"
#include "ksimplex/krylov.hpp"
#include "ksimplex/l1_solver.hpp"
#include "ksimplex/linf_solver.hpp"
#include "ksimplex/qr_update.hpp"

using namespace ksimplex;

namespace {

DenseMatrix random_dense(Index n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) a(i, j) = u(eng);
  return a + 3.0 * DenseMatrix::Identity(n, n);
}

void BM_Spmv(benchmark::State& state) {
  const TestProblem p = gen_blur_square(state.range(0));
  const Vector x = Vector::Ones(p.a.cols());
  for (auto _ : state) benchmark::DoNotOptimize(spmv(p.a, x));
  state.SetItemsProcessed(state.iterations() * p.a.nonzeros());
}
BENCHMARK(BM_Spmv)->Arg(64)->Arg(125);

void BM_QrReplaceRow(benchmark::State& state) {
  const Index n = state.range(0);
  const DenseMatrix b = random_dense(n, 1);
  QrFactors f = qr_factor(b);
  const DenseMatrix rows = random_dense(n, 2);
  Index j = 0;
  for (auto _ : state) {
    f.replace_row(j % n, b.row(j % n).transpose() + 0.1 * rows.row(j % n).transpose());
    ++j;
  }
}
BENCHMARK(BM_QrReplaceRow)->Arg(20)->Arg(60)->Arg(150);

void BM_QrRefactor(benchmark::State& state) {
  const Index n = state.range(0);
  const DenseMatrix b = random_dense(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(qr_factor(b));
}
BENCHMARK(BM_QrRefactor)->Arg(20)->Arg(60)->Arg(150);

template <class Simplex>
void solve_blur(benchmark::State& state) {
  const TestProblem p = gen_blur_square(state.range(0));
  const SparseOperator op(p.a);
  const Index k = state.range(1);
  for (auto _ : state) {
    KrylovBasis basis(op, p.b);
    Simplex s(p.b);
    Index inner = 0;
    while (basis.dimension() < k && !basis.breakdown()) {
      s.expand(basis.expand().av);
      inner += s.optimize(1 << 30).iterations;
    }
    state.counters["inner"] = static_cast<double>(inner);
  }
}

void BM_LinfBlur(benchmark::State& state) { solve_blur<LinfSimplex>(state); }
BENCHMARK(BM_LinfBlur)->Args({32, 40})->Args({64, 50})->Unit(benchmark::kMillisecond);

void BM_L1Blur(benchmark::State& state) { solve_blur<L1Simplex>(state); }
BENCHMARK(BM_L1Blur)->Args({32, 20})->Args({32, 40})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
