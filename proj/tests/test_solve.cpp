#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sch/geometry.hpp"
#include "sch/io.hpp"
#include "sch/kernels.hpp"
#include "sch/operators.hpp"
#include "sch/rng.hpp"
#include "sch/solve.hpp"

using namespace sch;

namespace {

// 1D periodic Laplacian of size n as a 2D matrix
SparseMatrix periodic_laplacian_1d(int n) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    t.push_back({i, (i + 1) % n, -1.0});
    t.push_back({i, (i + n - 1) % n, -1.0});
  }
  return SparseMatrix::assemble(std::move(t), n, n, true);
}

} // namespace

TEST_CASE("cg on the identity converges immediately") {
  const SparseMatrix id = SparseMatrix::assemble({{0, 0, 1.0}, {1, 1, 1.0}}, 2, 2, true);
  std::vector<double> x;
  const SolveReport rep = cg_solve(id, std::vector<double>{1.0, 2.0}, x);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 1);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("cg solves the 2x2 oracle system") {
  const SparseMatrix a = SparseMatrix::assemble(
      {{0, 0, 4.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 3.0}}, 2, 2, true);
  std::vector<double> x;
  const SolveReport rep = cg_solve(a, std::vector<double>{1.0, 2.0}, x);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 2);
  CHECK(x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("cg handles the periodic null space via mean projection") {
  const int n = 64;
  const SparseMatrix L = periodic_laplacian_1d(n);
  SplitMix64 rng(4);
  std::vector<double> b(n);
  for (double& v : b) v = rng.next_symmetric();
  const std::vector<double> weights(n, 1.0);
  const std::vector<double> b0 = project_mean_zero(b, weights);

  IterOptions opt;
  opt.mean_zero_weights = &weights;
  std::vector<double> x;
  const SolveReport rep = cg_solve(L, b0, x, opt);
  CHECK(rep.converged);

  const std::vector<double> want = oracle::solve_singular_dense(L, b0, weights);
  for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("solve reports recompute their residual from scratch") {
  const int n = 40;
  const SparseMatrix L = periodic_laplacian_1d(n);
  std::vector<double> b(n, 0.0);
  b[3] = 1.0;
  b[17] = -1.0;
  const std::vector<double> weights(n, 1.0);
  IterOptions opt;
  opt.mean_zero_weights = &weights;
  std::vector<double> x;
  const SolveReport rep = cg_solve(L, b, x, opt);
  CHECK(rep.converged);

  std::vector<double> r(n);
  L.matvec(x, r);
  for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
  const double actual = kernels::nrm2(r);
  CHECK(rep.final_residual_norm ==
        doctest::Approx(actual).epsilon(1e-12));
  // converged <=> residual under tol * (||b|| + guard)
  CHECK(rep.final_residual_norm <= opt.tol * (kernels::nrm2(b) + 1e-300));
}

TEST_CASE("cg reports failure honestly when the budget is too small") {
  const SparseMatrix L = periodic_laplacian_1d(128);
  std::vector<double> b(128);
  SplitMix64 rng(7);
  for (double& v : b) v = rng.next_symmetric();
  const std::vector<double> weights(128, 1.0);
  IterOptions opt;
  opt.mean_zero_weights = &weights;
  opt.max_iter = 2;
  std::vector<double> x;
  const SolveReport rep = cg_solve(L, project_mean_zero(b, weights), x, opt);
  CHECK(!rep.converged);
  CHECK(rep.final_residual_norm > opt.tol * (kernels::nrm2(b) + 1e-300));
}

TEST_CASE("minres solves symmetric indefinite systems") {
  const SparseMatrix a = SparseMatrix::assemble({{0, 0, 2.0}, {1, 1, -3.0}}, 2, 2, true);
  std::vector<double> x;
  const SolveReport rep = minres_solve(a, std::vector<double>{2.0, -3.0}, x);
  CHECK(rep.converged);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-10));

  // small random symmetric indefinite block vs the dense oracle
  SplitMix64 rng(12);
  const int n = 18;
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      if (i != j && rng.next_double() < 0.7) continue;
      const double v = rng.next_symmetric() + (i == j ? (i % 2 ? 3.0 : -3.0) : 0.0);
      t.push_back({i, j, v});
      if (i != j) t.push_back({j, i, v});
    }
  const SparseMatrix sym = SparseMatrix::assemble(std::move(t), n, n, true);
  std::vector<double> b(n);
  for (double& v : b) v = rng.next_symmetric();
  std::vector<double> got;
  IterOptions opt;
  opt.jacobi = true;
  const SolveReport rep2 = minres_solve(sym, b, got, opt);
  CHECK(rep2.converged);
  const std::vector<double> want = oracle::dense_solve(oracle::to_dense(sym), b);
  for (int i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-8));
}

TEST_CASE("mean-zero projection") {
  const std::vector<double> w3(3, 1.0);
  CHECK(project_mean_zero(std::vector<double>{1.0, 1.0, 1.0}, w3) ==
        std::vector<double>{0.0, 0.0, 0.0});
  const auto p = project_mean_zero(std::vector<double>{1.0, 2.0, 3.0}, w3);
  CHECK(p[0] == doctest::Approx(-1.0));
  CHECK(p[1] == doctest::Approx(0.0));
  CHECK(p[2] == doctest::Approx(1.0));

  const auto q = project_mean_zero(std::vector<double>{1.0, 2.0}, std::vector<double>{2.0, 1.0});
  CHECK(q[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(q[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  // zero-weight entries stay untouched
  const auto r = project_mean_zero(std::vector<double>{5.0, 1.0, 3.0},
                                   std::vector<double>{0.0, 1.0, 1.0});
  CHECK(r[0] == 5.0);
  CHECK(r[1] == doctest::Approx(-1.0));
  CHECK(r[2] == doctest::Approx(1.0));

  CHECK_THROWS_AS(project_mean_zero(std::vector<double>{1.0}, std::vector<double>{0.0}),
                  SolverError);
}

TEST_CASE("uzawa on the walled MAC Stokes system") {
  const CellMask mask = build_cell_mask(CellGeometry::empty(), 8);
  const StokesOperators ops = stokes_operators(mask, Outer::Walled);

  SUBCASE("zero forcing gives the zero solution") {
    const std::vector<double> f(ops.faces.count(), 0.0);
    const SaddleSolution sol = uzawa_solve(ops.A, ops.B, f, ops.cells.weights);
    CHECK(sol.report.converged);
    for (double v : sol.u) CHECK(v == 0.0);
    for (double v : sol.p) CHECK(v == 0.0);
  }

  SUBCASE("gradient forcing is absorbed by the pressure") {
    SplitMix64 rng(3);
    std::vector<double> q(ops.cells.count);
    for (double& v : q) v = rng.next_symmetric();
    const std::vector<double> q0 = project_mean_zero(q, ops.cells.weights);
    const SparseMatrix Bt = ops.B.transpose();
    std::vector<double> f(ops.faces.count());
    Bt.matvec(q0, f);
    const SaddleSolution sol = uzawa_solve(ops.A, ops.B, f, ops.cells.weights);
    CHECK(sol.report.converged);
    for (double v : sol.u) CHECK(std::fabs(v) < 1e-8);
    for (int i = 0; i < ops.cells.count; ++i)
      CHECK(sol.p[i] == doctest::Approx(q0[i]).epsilon(1e-7));
  }

  SUBCASE("uniform forcing matches the dense saddle oracle") {
    std::vector<double> f(ops.faces.count(), 0.0);
    for (int q = 0; q < ops.faces.count_x; ++q) f[q] = 1.0;
    UzawaOptions opt;
    opt.tol = 1e-12;
    const SaddleSolution sol = uzawa_solve(ops.A, ops.B, f, ops.cells.weights, opt);
    CHECK(sol.report.converged);
    const oracle::SaddleOracle want =
        oracle::solve_saddle_dense(ops.A, ops.B, f, ops.cells.weights);
    for (std::size_t i = 0; i < sol.u.size(); ++i)
      CHECK(sol.u[i] == doctest::Approx(want.u[i]).epsilon(1e-8).scale(1.0));
    for (std::size_t i = 0; i < sol.p.size(); ++i)
      CHECK(sol.p[i] == doctest::Approx(want.p[i]).epsilon(1e-8).scale(1.0));
  }

  SUBCASE("identical inputs give bitwise identical solutions") {
    std::vector<double> f(ops.faces.count());
    SplitMix64 rng(5);
    for (double& v : f) v = rng.next_symmetric();
    const SaddleSolution a = uzawa_solve(ops.A, ops.B, f, ops.cells.weights);
    const SaddleSolution b = uzawa_solve(ops.A, ops.B, f, ops.cells.weights);
    CHECK(a.u == b.u);
    CHECK(a.p == b.p);
  }
}
