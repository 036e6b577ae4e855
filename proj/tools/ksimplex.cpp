#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "ksimplex/error.hpp"
#include "ksimplex/experiment.hpp"
#include "ksimplex/generators.hpp"
#include "ksimplex/krylov.hpp"
#include "ksimplex/lp_oracle.hpp"
#include "ksimplex/matrix_market.hpp"
#include "ksimplex/preconditioner.hpp"

using namespace ksimplex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitLimit = 2;

struct SystemArgs {
  std::string matrix;
  std::string rhs;
  std::string x0;
  std::string precond = "none";
  std::string log;
  std::string out;
  Index max_outer = 100;
  Index max_inner = std::numeric_limits<Index>::max();
  Index cap_inner = std::numeric_limits<Index>::max();
  double tol = 1e-12;
};

void add_system_options(CLI::App* cmd, SystemArgs& a) {
  cmd->add_option("--matrix", a.matrix, "Matrix Market file with A")->required()->check(CLI::ExistingFile);
  cmd->add_option("--rhs", a.rhs, "right-hand side b")->required()->check(CLI::ExistingFile);
  cmd->add_option("--x0", a.x0, "initial guess (default zero)")->check(CLI::ExistingFile);
  cmd->add_option("--max-outer", a.max_outer, "largest Krylov dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--max-inner", a.max_inner, "total inner iteration budget")->check(CLI::PositiveNumber);
  cmd->add_option("--cap-inner", a.cap_inner, "inner iterations per subspace before forcing expansion")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", a.tol, "stop when the objective drops to this value")->check(CLI::PositiveNumber);
  cmd->add_option("--precond", a.precond, "right preconditioner")->check(CLI::IsMember({"none", "jacobi", "ic0"}));
  cmd->add_option("--log", a.log, "CSV log path");
  cmd->add_option("--out", a.out, "write the solution x here");
}

struct LoadedSystem {
  SparseMatrix a;
  Vector b;
  Vector x0;
};

LoadedSystem load(const SystemArgs& args) {
  LoadedSystem s{read_matrix_market(args.matrix), read_vector(args.rhs), {}};
  if (s.b.size() != s.a.rows()) throw DimensionError("rhs length does not match the matrix rows");
  s.x0 = args.x0.empty() ? Vector(Vector::Zero(s.a.cols())) : read_vector(args.x0);
  if (s.x0.size() != s.a.cols()) throw DimensionError("x0 length does not match the matrix columns");
  return s;
}

std::ofstream open_log(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

int status_code(RunStatus s) { return s == RunStatus::IterationLimit ? kExitLimit : kExitOk; }

int run_solve(const std::string& norm, const SystemArgs& args) {
  const LoadedSystem sys = load(args);
  const PreparedOperator prepared = prepare_operator(sys.a, parse_precond(args.precond));
  RunOptions opts;
  opts.max_outer = args.max_outer;
  opts.max_inner = args.max_inner;
  opts.cap_inner = args.cap_inner;
  opts.tol = args.tol;
  const bool linf = norm == "linf";
  const RunResult run = linf ? linf_run(*prepared.op, sys.b, sys.x0, opts) : l1_run(*prepared.op, sys.b, sys.x0, opts);

  if (!args.log.empty()) {
    std::ofstream log = open_log(args.log);
    write_log_csv(log, run, linf ? NormKind::Linf : NormKind::L1);
  }
  if (!args.out.empty()) write_vector(run.x, args.out);
  if (prepared.shift > 0.0) std::printf("ic0 shift %.3g\n", prepared.shift);
  std::printf("status %s  k %td  inner %td  objective %.6e\n", std::string(to_string(run.status)).c_str(), run.k,
              run.total_inner, run.objective);
  return status_code(run.status);
}

int run_gmres(const SystemArgs& args) {
  const LoadedSystem sys = load(args);
  const PreparedOperator prepared = prepare_operator(sys.a, parse_precond(args.precond));
  const bool square = sys.a.rows() == sys.a.cols();
  const GmresTrace trace = square ? gmres_run(*prepared.op, sys.b, sys.x0, args.max_outer, !args.out.empty())
                                  : gmres_normal_equations(*prepared.op, sys.b, sys.x0, args.max_outer,
                                                           !args.out.empty());
  if (!args.log.empty()) {
    std::ofstream log = open_log(args.log);
    write_gmres_csv(log, trace);
  }
  if (!args.out.empty()) write_vector(trace.solutions.back(), args.out);
  const double last = trace.residual_2norms.back();
  std::printf("%s  k %td  residual_2 %.6e%s\n", square ? "gmres" : "gmres-ne", trace.max_k(), last,
              trace.breakdown ? "  (breakdown)" : "");
  return last <= args.tol || trace.breakdown ? kExitOk : kExitLimit;
}

int run_compare_cmd(const SystemArgs& args) {
  const LoadedSystem sys = load(args);
  const PreparedOperator prepared = prepare_operator(sys.a, parse_precond(args.precond));
  CompareOptions opts;
  opts.max_k = args.max_outer;
  opts.max_inner = args.max_inner;
  opts.cap_inner = args.cap_inner;
  opts.tol = args.tol;
  const CompareResult res = run_compare(*prepared.op, sys.b, sys.x0, opts);
  if (args.log.empty()) {
    write_compare_csv(std::cout, res);
  } else {
    std::ofstream log = open_log(args.log);
    write_compare_csv(log, res);
    std::printf("linf %s k %td objective %.6e\nl1   %s k %td objective %.6e\n",
                std::string(to_string(res.linf.status)).c_str(), res.linf.k, res.linf.objective,
                std::string(to_string(res.l1.status)).c_str(), res.l1.k, res.l1.objective);
  }
  const bool limit = res.linf.status == RunStatus::IterationLimit || res.l1.status == RunStatus::IterationLimit;
  return limit ? kExitLimit : kExitOk;
}

int run_oracle(const std::string& norm, const SystemArgs& args, Index k) {
  const LoadedSystem sys = load(args);
  const SparseOperator op(sys.a);
  const Vector r0 = sys.b - op.apply(sys.x0);
  KrylovBasis basis(op, r0);
  while (basis.dimension() < k && !basis.breakdown()) basis.expand();
  const DenseMatrix av = basis.av();
  const OracleResult res = norm == "linf" ? oracle_projected_linf(av, r0) : oracle_projected_l1(av, r0);
  std::printf("k %td  subsets %td  objective %.12e\n", basis.dimension(), res.subsets, res.objective);
  return kExitOk;
}

void write_problem(const TestProblem& p, const std::string& prefix) {
  write_matrix_market(p.a, prefix + "_A.mtx");
  write_vector(p.b, prefix + "_b.mtx");
  write_vector(p.b_clean, prefix + "_b_clean.mtx");
  write_vector(p.image, prefix + "_x.mtx");
  std::printf("wrote %s_{A,b,b_clean,x}.mtx  (%td x %td, nnz %td)\n", prefix.c_str(), p.a.rows(), p.a.cols(),
              p.a.nonzeros());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov subspace minimization of ||b - Ax|| in the l-infinity and l1 norms"};
  app.require_subcommand(1);

  std::string norm = "linf";
  SystemArgs solve_args;
  auto* solve = app.add_subcommand("solve", "run the Krylov-simplex solver");
  solve->add_option("--norm", norm, "residual norm")->required()->check(CLI::IsMember({"linf", "l1"}));
  add_system_options(solve, solve_args);

  SystemArgs gmres_args;
  auto* gmres = app.add_subcommand("gmres", "l2 reference (normal equations when A is not square)");
  add_system_options(gmres, gmres_args);

  SystemArgs compare_args;
  auto* compare = app.add_subcommand("compare", "per-k table of both solvers against the l2 reference");
  add_system_options(compare, compare_args);

  std::string oracle_norm = "linf";
  SystemArgs oracle_args;
  Index oracle_k = 1;
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum of the projected problem (small sizes only)");
  oracle->add_option("--norm", oracle_norm, "residual norm")->required()->check(CLI::IsMember({"linf", "l1"}));
  oracle->add_option("--matrix", oracle_args.matrix)->required()->check(CLI::ExistingFile);
  oracle->add_option("--rhs", oracle_args.rhs)->required()->check(CLI::ExistingFile);
  oracle->add_option("--x0", oracle_args.x0)->check(CLI::ExistingFile);
  oracle->add_option("--k", oracle_k, "Krylov dimension")->required()->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "write a test problem");
  gen->require_subcommand(1);
  int grid = 32;
  std::uint64_t seed = 1;
  std::string prefix;
  auto* blur = gen->add_subcommand("blur", "symmetric 5-point blur on a square grid");
  blur->add_option("--grid", grid)->required()->check(CLI::Range(2, 4096));
  blur->add_option("--out-prefix", prefix)->required();
  blur->add_option("--seed", seed);
  CorruptionSpec corruption;
  auto* deblur = gen->add_subcommand("deblur2", "two-stencil deblurring problem with corrupted data");
  deblur->add_option("--grid", grid)->required()->check(CLI::Range(2, 4096));
  deblur->add_option("--corrupt-frac", corruption.fraction)->check(CLI::Range(0.0, 1.0));
  deblur->add_option("--corrupt-factor", corruption.factor);
  deblur->add_option("--corrupt-seed", corruption.seed);
  deblur->add_option("--out-prefix", prefix)->required();
  deblur->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return run_solve(norm, solve_args);
    if (*gmres) return run_gmres(gmres_args);
    if (*compare) return run_compare_cmd(compare_args);
    if (*oracle) return run_oracle(oracle_norm, oracle_args, oracle_k);
    if (*blur) write_problem(gen_blur_square(grid, seed), prefix);
    if (*deblur) write_problem(gen_deblur_two_stencil(grid, corruption, seed), prefix);
    return kExitOk;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
}
