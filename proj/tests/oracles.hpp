#pragma once

// Test-only dense oracles, deliberately independent of the iterative
// solution paths they check.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "sch/sparse.hpp"

namespace oracle {

// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> A,
                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(A[r][col]) > std::fabs(A[pivot][col])) pivot = r;
    if (std::fabs(A[pivot][col]) < 1e-14) throw std::runtime_error("dense oracle: singular");
    std::swap(A[col], A[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = A[r][col] / A[col][col];
      if (m == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= m * A[col][c];
      b[r] -= m * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    double acc = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) acc -= A[ri][c] * x[c];
    x[ri] = acc / A[ri][ri];
  }
  return x;
}

inline std::vector<std::vector<double>> to_dense(const sch::SparseMatrix& m) {
  std::vector<std::vector<double>> dense(m.rows(), std::vector<double>(m.cols(), 0.0));
  const auto& offs = m.row_offsets();
  const auto& cols = m.col_indices();
  const auto& vals = m.values();
  for (int r = 0; r < m.rows(); ++r)
    for (int p = offs[r]; p < offs[r + 1]; ++p) dense[r][cols[p]] = vals[p];
  return dense;
}

// Singular symmetric system with null space = weighted constants, solved by
// bordering with the mean constraint.
inline std::vector<double> solve_singular_dense(const sch::SparseMatrix& L,
                                                std::span<const double> b,
                                                std::span<const double> weights) {
  const std::size_t n = b.size();
  std::vector<std::vector<double>> A(n + 1, std::vector<double>(n + 1, 0.0));
  const auto dense = to_dense(L);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) A[r][c] = dense[r][c];
  for (std::size_t r = 0; r < n; ++r) {
    A[r][n] = weights[r];
    A[n][r] = weights[r];
  }
  std::vector<double> rhs(b.begin(), b.end());
  rhs.push_back(0.0);
  std::vector<double> x = dense_solve(std::move(A), std::move(rhs));
  x.pop_back();
  return x;
}

struct SaddleOracle {
  std::vector<double> u, p;
};

// Direct solve of [A B^T; B 0] with the pressure constant pinned by a
// weighted mean-zero constraint.
inline SaddleOracle solve_saddle_dense(const sch::SparseMatrix& A, const sch::SparseMatrix& B,
                                       std::span<const double> f,
                                       std::span<const double> p_weights) {
  const std::size_t nu = static_cast<std::size_t>(A.rows());
  const std::size_t np = static_cast<std::size_t>(B.rows());
  const std::size_t n = nu + np + 1;
  std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
  const auto da = to_dense(A);
  const auto db = to_dense(B);
  for (std::size_t r = 0; r < nu; ++r)
    for (std::size_t c = 0; c < nu; ++c) M[r][c] = da[r][c];
  for (std::size_t r = 0; r < np; ++r)
    for (std::size_t c = 0; c < nu; ++c) {
      M[nu + r][c] = db[r][c];
      M[c][nu + r] = db[r][c];
    }
  for (std::size_t r = 0; r < np; ++r) {
    M[nu + r][n - 1] = p_weights[r];
    M[n - 1][nu + r] = p_weights[r];
  }
  std::vector<double> rhs(n, 0.0);
  for (std::size_t r = 0; r < nu; ++r) rhs[r] = f[r];
  std::vector<double> x = dense_solve(std::move(M), std::move(rhs));
  SaddleOracle out;
  out.u.assign(x.begin(), x.begin() + nu);
  out.p.assign(x.begin() + nu, x.begin() + nu + np);
  return out;
}

} // namespace oracle
