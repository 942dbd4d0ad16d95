#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sch/io.hpp"
#include "sch/rng.hpp"
#include "sch/sparse.hpp"

using namespace sch;

TEST_CASE("assembly produces sorted rows and sums duplicates") {
  const SparseMatrix id =
      SparseMatrix::assemble({{0, 0, 1.0}, {1, 1, 1.0}}, 2, 2, true);
  CHECK(id.nnz() == 2);

  const SparseMatrix dup = SparseMatrix::assemble({{0, 0, 2.0}, {0, 0, 3.0}}, 1, 1);
  CHECK(dup.nnz() == 1);
  CHECK(dup.values()[0] == 5.0);

  // explicit zeros and cancelling duplicates are dropped
  const SparseMatrix z =
      SparseMatrix::assemble({{0, 1, 0.0}, {1, 0, 2.0}, {1, 0, -2.0}}, 2, 2);
  CHECK(z.nnz() == 0);

  // column indices strictly increasing within each row
  const SparseMatrix m =
      SparseMatrix::assemble({{0, 3, 1.0}, {0, 1, 2.0}, {0, 2, 3.0}}, 1, 4);
  CHECK(m.col_indices() == std::vector<int>{1, 2, 3});
}

TEST_CASE("symmetry check") {
  CHECK_NOTHROW(SparseMatrix::assemble(
      {{0, 1, 1.0}, {0, 0, 4.0}, {1, 0, 1.0}, {1, 1, 3.0}}, 2, 2, true));
  CHECK_THROWS_AS(
      SparseMatrix::assemble({{0, 1, 1.0}, {1, 0, 2.0}}, 2, 2, true), SolverError);
  const SparseMatrix sym = SparseMatrix::assemble(
      {{0, 1, 1.0}, {0, 0, 4.0}, {1, 0, 1.0}, {1, 1, 3.0}}, 2, 2);
  CHECK(sym.max_asymmetry() == 0.0);
}

TEST_CASE("out-of-range triplets are rejected with their coordinates") {
  try {
    SparseMatrix::assemble({{0, 5, 1.0}}, 2, 2);
    CHECK(false);
  } catch (const SolverError& err) {
    CHECK(std::string(err.what()).find("(0,5,") != std::string::npos);
  }
}

TEST_CASE("matvec agrees with the transpose path and dense oracle") {
  SplitMix64 rng(99);
  std::vector<Triplet> t;
  const int n = 23;
  for (int r = 0; r < n; ++r)
    for (int reps = 0; reps < 4; ++reps)
      t.push_back({r, static_cast<int>(rng.next_u64() % n), rng.next_symmetric()});
  const SparseMatrix a = SparseMatrix::assemble(std::move(t), n, n);
  const auto dense = oracle::to_dense(a);

  std::vector<double> x(n), y(n), yt(n);
  for (double& v : x) v = rng.next_symmetric();
  a.matvec(x, y);
  a.transpose().matvec_transpose(x, yt);  // (A^T)^T x = A x
  for (int r = 0; r < n; ++r) {
    double want = 0.0;
    for (int c = 0; c < n; ++c) want += dense[r][c] * x[c];
    CHECK(y[r] == doctest::Approx(want).epsilon(1e-13));
    CHECK(yt[r] == doctest::Approx(want).epsilon(1e-13));
  }

  std::vector<double> y2(n);
  a.matvec(x, y2);
  CHECK(y == y2);  // bitwise repeatable
}
